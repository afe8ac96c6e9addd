#include "bohm/wavefield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bohm {

namespace {

constexpr double kPi = std::numbers::pi;

std::string node_message(double theta, double phi, double t, double density) {
    std::ostringstream os;
    os << "wavefunction node: |psi|^2=" << density << " at theta=" << theta << " phi=" << phi
       << " t=" << t;
    return os.str();
}

void require_off_node(const AmplitudeJet& jet) {
    const double rho = jet.density();
    if (!(rho >= jet.node_threshold) || rho == 0.0)
        throw NodeProximity(jet.theta, jet.phi, jet.t, rho);
}

// u_i / u without going through std::complex division, so that real inputs
// give an exactly real quotient.
cplx ratio(cplx num, cplx den, double den_norm) {
    return num * std::conj(den) / den_norm;
}

} // namespace

NodeProximity::NodeProximity(double theta_, double phi_, double t_, double density_)
    : std::runtime_error(node_message(theta_, phi_, t_, density_)),
      theta(theta_),
      phi(phi_),
      t(t_),
      density(density_) {}

Superposition::Superposition(std::vector<Term> terms, SurfaceKind kind, TorusShape shape)
    : terms_(std::move(terms)), kind_(kind), shape_(shape) {
    if (terms_.empty()) throw std::invalid_argument("superposition needs at least one term");
    double norm2 = 0.0;
    for (const auto& term : terms_) {
        if (term.state.kind != kind_)
            throw std::invalid_argument("superposition term " + term.state.label() + " is on the " +
                                        std::string(to_string(term.state.kind)) + " surface, expected " +
                                        std::string(to_string(kind_)));
        if (term.state.coeffs.empty())
            throw std::invalid_argument("superposition term " + term.state.label() + " has no coefficients");
        norm2 += std::norm(term.weight);
        max_harmonic_ = std::max(max_harmonic_, term.state.harmonic(term.state.coeffs.size() - 1));
    }
    if (std::abs(norm2 - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "superposition weights must satisfy sum |c|^2 = 1, got " << norm2;
        throw std::invalid_argument(msg.str());
    }
    if (terms_.front().weight == cplx(0.0, 0.0))
        throw std::invalid_argument("first superposition term must have a nonzero weight");

    relative_weights_.reserve(terms_.size());
    for (std::size_t j = 0; j < terms_.size(); ++j)
        relative_weights_.push_back(j == 0 ? cplx(1.0, 0.0) : terms_[j].weight / terms_[0].weight);

    // Mean of |Ψ|² over the coordinate square at t = 0.
    constexpr int nt = 64;
    constexpr int np = 32;
    double sum = 0.0;
    for (int i = 0; i < nt; ++i)
        for (int k = 0; k < np; ++k)
            sum += evaluate_jet(*this, 2.0 * kPi * i / nt, 2.0 * kPi * k / np, 0.0).density();
    node_threshold_ = 1e-12 * sum / (nt * np);
}

Superposition Superposition::normalized(std::vector<Term> terms, SurfaceKind kind, TorusShape shape,
                                        double* original_norm2) {
    double norm2 = 0.0;
    for (const auto& term : terms) norm2 += std::norm(term.weight);
    if (original_norm2 != nullptr) *original_norm2 = norm2;
    if (!(norm2 > 0.0)) throw std::invalid_argument("superposition weights are all zero");
    const double scale = 1.0 / std::sqrt(norm2);
    if (std::abs(norm2 - 1.0) > 1e-15)
        for (auto& term : terms) term.weight *= scale;
    return Superposition(std::move(terms), kind, shape);
}

bool Superposition::single_m() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const Term& t) { return t.state.m == terms_.front().state.m; });
}

AmplitudeJet evaluate_jet(const Superposition& sp, double theta, double phi, double t) {
    thread_local std::vector<double> cos_k;
    thread_local std::vector<double> sin_k;
    const int kmax = sp.max_harmonic();
    cos_k.resize(kmax + 1);
    sin_k.resize(kmax + 1);
    cos_k[0] = 1.0;
    sin_k[0] = 0.0;
    if (kmax >= 1) {
        const double c1 = std::cos(theta);
        const double s1 = std::sin(theta);
        cos_k[1] = c1;
        sin_k[1] = s1;
        // Chebyshev recurrence; re-anchored with exact values every 16 steps.
        for (int k = 2; k <= kmax; ++k) {
            if (k % 16 == 0) {
                cos_k[k] = std::cos(k * theta);
                sin_k[k] = std::sin(k * theta);
            } else {
                cos_k[k] = 2.0 * c1 * cos_k[k - 1] - cos_k[k - 2];
                sin_k[k] = 2.0 * c1 * sin_k[k - 1] - sin_k[k - 2];
            }
        }
    }

    const auto& terms = sp.terms();
    const auto& rel = sp.relative_weights();
    const auto& ref = terms.front().state;

    AmplitudeJet jet;
    jet.theta = theta;
    jet.phi = phi;
    jet.t = t;
    jet.node_threshold = sp.node_threshold();
    jet.carrier_m = ref.m;
    jet.carrier = terms.front().weight * std::polar(1.0, ref.m * phi - ref.energy * t);

    for (std::size_t j = 0; j < terms.size(); ++j) {
        const StationaryState& s = terms[j].state;
        double f = 0.0, df = 0.0, d2f = 0.0;
        if (s.parity == Parity::Even) {
            for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
                const double c = s.coeffs[i];
                const double k = static_cast<double>(i);
                f += c * cos_k[i];
                df -= c * k * sin_k[i];
                d2f -= c * k * k * cos_k[i];
            }
        } else {
            for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
                const double c = s.coeffs[i];
                const double k = static_cast<double>(i + 1);
                f += c * sin_k[i + 1];
                df += c * k * cos_k[i + 1];
                d2f -= c * k * k * sin_k[i + 1];
            }
        }

        const int dm = s.m - ref.m;
        cplx factor = rel[j];
        if (j != 0) {
            const double arg = dm * phi - (s.energy - ref.energy) * t;
            if (arg != 0.0) factor *= cplx(std::cos(arg), std::sin(arg));
        }
        const cplx idm(0.0, static_cast<double>(dm));
        jet.u += factor * f;
        jet.u_t += factor * df;
        jet.u_tt += factor * d2f;
        if (dm != 0) {
            jet.u_p += idm * factor * f;
            jet.u_tp += idm * factor * df;
            jet.u_pp -= static_cast<double>(dm) * dm * factor * f;
        }
    }
    return jet;
}

double phase_S(const AmplitudeJet& jet) {
    require_off_node(jet);
    const cplx psi = jet.psi();
    return std::atan2(psi.imag(), psi.real());
}

PhaseGradient gradient_S(const AmplitudeJet& jet) {
    require_off_node(jet);
    const double un = std::norm(jet.u);
    return {ratio(jet.u_t, jet.u, un).imag(), ratio(jet.u_p, jet.u, un).imag() + jet.carrier_m};
}

Velocity velocity(const AmplitudeJet& jet, SurfaceKind kind, const TorusShape& shape, double theta) {
    const PhaseGradient grad = gradient_S(jet);
    const MetricDiag g = metric_diag(shape, kind, theta);
    return {grad.s_t / g.g_tt, grad.s_p / g.g_pp};
}

SHessian hessian_S(const AmplitudeJet& jet) {
    require_off_node(jet);
    const double un = std::norm(jet.u);
    const cplx rt = ratio(jet.u_t, jet.u, un);
    const cplx rp = ratio(jet.u_p, jet.u, un);
    const auto im_prod = [](cplx x, cplx y) { return x.real() * y.imag() + x.imag() * y.real(); };
    return {
        ratio(jet.u_tt, jet.u, un).imag() - im_prod(rt, rt),
        ratio(jet.u_tp, jet.u, un).imag() - im_prod(rt, rp),
        ratio(jet.u_pp, jet.u, un).imag() - im_prod(rp, rp),
    };
}

double quantum_potential(const Superposition& sp, double theta, double phi, double t) {
    const AmplitudeJet jet = evaluate_jet(sp, theta, phi, t);
    require_off_node(jet);
    // Work with the envelope u; |carrier| is a constant factor and cancels in ∇²R/R.
    const cplx u = jet.u;
    const cplx ut = jet.u_t;
    const cplx up = jet.u_p;
    const double rho = std::norm(u);
    const double rho_t = 2.0 * (std::conj(u) * ut).real();
    const double rho_p = 2.0 * (std::conj(u) * up).real();
    const double rho_tt = 2.0 * (std::norm(ut) + (std::conj(u) * jet.u_tt).real());
    const double rho_pp = 2.0 * (std::norm(up) + (std::conj(u) * jet.u_pp).real());

    const TorusShape& shape = sp.shape();
    const MetricDiag g = metric_diag(shape, sp.kind(), theta);
    const double log_G_prime = sp.kind() == SurfaceKind::Torus
                                   ? scale_factor_G_prime(shape, theta) / scale_factor_G(shape, theta)
                                   : 0.0;
    const double lap_rho = (rho_tt + log_G_prime * rho_t) / g.g_tt + rho_pp / g.g_pp;
    const double grad2 = rho_t * rho_t / g.g_tt + rho_p * rho_p / g.g_pp;
    const double lap_R_over_R = lap_rho / (2.0 * rho) - grad2 / (4.0 * rho * rho);
    return -0.5 * lap_R_over_R;
}

double surface_norm(const Superposition& sp, double t, int nodes_theta, int nodes_phi) {
    const TorusShape& shape = sp.shape();
    const double dth = 2.0 * kPi / nodes_theta;
    const double dph = 2.0 * kPi / nodes_phi;
    double sum = 0.0;
    for (int i = 0; i < nodes_theta; ++i) {
        const double th = i * dth;
        const double weight = sp.kind() == SurfaceKind::Torus ? scale_factor_G(shape, th) : 1.0;
        double row = 0.0;
        for (int k = 0; k < nodes_phi; ++k) row += evaluate_jet(sp, th, k * dph, t).density();
        sum += weight * row;
    }
    return sum * dth * dph * shape.a() * shape.R();
}

double PhaseUnwrapper::operator()(double wrapped) {
    if (last_) {
        const double jump = wrapped + offset_ - *last_;
        offset_ -= 2.0 * kPi * std::round(jump / (2.0 * kPi));
    }
    last_ = wrapped + offset_;
    return *last_;
}

} // namespace bohm
