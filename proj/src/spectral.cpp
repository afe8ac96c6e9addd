#include "bohm/spectral.hpp"

#include "bohm/reference_tables.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace bohm {

namespace {

constexpr double kPi = std::numbers::pi;

// Number of quadrature nodes needed for the projected integrals to be exact
// to round-off. Products of basis functions are trig polynomials of degree
// < 2N; the 1/G weight has Fourier coefficients decaying like r^k with
// r = (1 − √(1 − α²)) / α, so ~37/|ln r| extra nodes push its aliasing below
// double precision.
int quadrature_nodes(int basis_size, double alpha) {
    int extra = 0;
    if (alpha > 0.0) {
        const double r = (1.0 - std::sqrt(1.0 - alpha * alpha)) / alpha;
        extra = static_cast<int>(std::ceil(37.0 / -std::log(r)));
    }
    return 4 * basis_size + 64 + extra;
}

std::string describe(const SpectralProblem& p) {
    std::ostringstream os;
    os << "R=" << p.shape.R() << " a=" << p.shape.a() << " m=" << p.m
       << " parity=" << parity_symbol(p.parity) << " basis_size=" << p.basis_size;
    return os.str();
}

int reference_lead_sign(Parity parity, int n, int m) {
    const ReferenceState* ref = find_reference_state(parity, n, m);
    if (ref == nullptr) return 1;
    double lead = 0.0;
    for (const auto& [k, c] : ref->listed)
        if (std::abs(c) > std::abs(lead)) lead = c;
    return lead < 0.0 ? -1 : 1;
}

} // namespace

char parity_symbol(Parity p) { return p == Parity::Even ? '+' : '-'; }

Parity parse_parity(std::string_view text) {
    if (text == "+" || text == "even") return Parity::Even;
    if (text == "-" || text == "odd") return Parity::Odd;
    throw std::invalid_argument("unknown parity '" + std::string(text) + "'");
}

std::string StationaryState::label() const {
    std::ostringstream os;
    os << "psi" << parity_symbol(parity) << '_' << n << m;
    return os.str();
}

StationaryState with_beta(StationaryState state, double beta, const TorusShape& shape) {
    state.beta = beta;
    state.energy = beta / (2.0 * shape.a() * shape.a());
    return state;
}

std::vector<StationaryState> solve_torus_states(const SpectralProblem& problem) {
    const int N = problem.basis_size;
    if (N < 8) throw std::invalid_argument("basis_size must be >= 8 (" + describe(problem) + ")");
    if (problem.m < 0) throw std::invalid_argument("m must be >= 0 (" + describe(problem) + ")");

    const double alpha = problem.shape.alpha();
    const double m2a2 = static_cast<double>(problem.m) * problem.m * alpha * alpha;
    const bool even = problem.parity == Parity::Even;
    const int Q = quadrature_nodes(N, alpha);
    const double w = 2.0 * kPi / Q;

    Eigen::MatrixXd basis(N, Q);
    Eigen::MatrixXd dbasis(N, Q);
    Eigen::VectorXd G(Q);
    for (int q = 0; q < Q; ++q) {
        const double th = w * q;
        G(q) = 1.0 + alpha * std::cos(th);
        for (int i = 0; i < N; ++i) {
            const double k = even ? i : i + 1;
            if (even) {
                basis(i, q) = std::cos(k * th);
                dbasis(i, q) = -k * std::sin(k * th);
            } else {
                basis(i, q) = std::sin(k * th);
                dbasis(i, q) = k * std::cos(k * th);
            }
        }
    }

    const Eigen::MatrixXd A = w * (dbasis * G.asDiagonal() * dbasis.transpose() +
                                   m2a2 * basis * G.cwiseInverse().asDiagonal() * basis.transpose());
    const Eigen::MatrixXd B = w * (basis * G.asDiagonal() * basis.transpose());

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, B);
    if (solver.info() != Eigen::Success)
        throw SpectralError("generalized eigensolver did not converge (" + describe(problem) + ")");

    const Eigen::VectorXd& values = solver.eigenvalues();
    const Eigen::MatrixXd& vectors = solver.eigenvectors();

    std::vector<StationaryState> out;
    out.reserve(N);
    for (int j = 0; j < N; ++j) {
        StationaryState s;
        s.kind = SurfaceKind::Torus;
        s.parity = problem.parity;
        s.n = even ? j : j + 1;
        s.m = problem.m;
        s.coeffs.assign(vectors.col(j).data(), vectors.col(j).data() + N);
        if (!std::isfinite(values(j)))
            throw SpectralError("non-finite eigenvalue (" + describe(problem) + ")");
        s = with_beta(std::move(s), values(j), problem.shape);

        auto lead = std::max_element(s.coeffs.begin(), s.coeffs.end(),
                                     [](double x, double y) { return std::abs(x) < std::abs(y); });
        const int want = reference_lead_sign(s.parity, s.n, s.m);
        if ((*lead < 0.0 ? -1 : 1) != want)
            for (double& c : s.coeffs) c = -c;
        out.push_back(std::move(s));
    }
    return out;
}

StationaryState torus_state(const TorusShape& shape, Parity parity, int n, int m, int basis_size) {
    const int rank = parity == Parity::Even ? n : n - 1;
    if (rank < 0 || rank >= basis_size) {
        std::ostringstream msg;
        msg << "state label (" << parity_symbol(parity) << ", n=" << n << ", m=" << m
            << ") outside basis of size " << basis_size;
        throw std::invalid_argument(msg.str());
    }
    auto states = solve_torus_states({shape, std::abs(m), parity, basis_size});
    StationaryState s = std::move(states[rank]);
    s.m = m;
    return s;
}

StationaryState flat_state(int n, int m, Parity parity, const TorusShape& shape) {
    if (n < 0) throw std::invalid_argument("flat state needs n >= 0");
    if (parity == Parity::Odd && n == 0)
        throw std::invalid_argument("odd flat state with n = 0 vanishes identically");
    StationaryState s;
    s.kind = SurfaceKind::FlatStrip;
    s.parity = parity;
    s.n = n;
    s.m = m;
    const std::size_t index = parity == Parity::Even ? n : n - 1;
    s.coeffs.assign(index + 1, 0.0);
    s.coeffs[index] = n == 0 ? 1.0 / std::sqrt(2.0 * kPi) : 1.0 / std::sqrt(kPi);
    const double alpha = shape.alpha();
    return with_beta(std::move(s), static_cast<double>(n) * n + static_cast<double>(m) * m * alpha * alpha,
                     shape);
}

ModeValues evaluate_mode(const StationaryState& state, double theta) {
    ModeValues v{0.0, 0.0, 0.0};
    const bool even = state.parity == Parity::Even;
    for (std::size_t i = 0; i < state.coeffs.size(); ++i) {
        const double k = state.harmonic(i);
        const double c = state.coeffs[i];
        const double ck = std::cos(k * theta);
        const double sk = std::sin(k * theta);
        if (even) {
            v.f += c * ck;
            v.df -= c * k * sk;
            v.d2f -= c * k * k * ck;
        } else {
            v.f += c * sk;
            v.df += c * k * ck;
            v.d2f -= c * k * k * sk;
        }
    }
    return v;
}

std::vector<StationaryState> solve_reference_states(const TorusShape& shape, int basis_size) {
    std::vector<StationaryState> out;
    for (const auto& ref : reference_states())
        out.push_back(torus_state(shape, ref.parity, ref.n, ref.m, basis_size));
    return out;
}

Table1Report verify_against_table1(std::span<const StationaryState> states) {
    Table1Report report;
    for (const auto& ref : reference_states()) {
        Table1Entry e;
        StationaryState label_only;
        label_only.parity = ref.parity;
        label_only.n = ref.n;
        label_only.m = ref.m;
        e.label = label_only.label();
        e.beta_reference = ref.beta;

        const StationaryState* solved = nullptr;
        for (const auto& s : states)
            if (s.kind == SurfaceKind::Torus && s.parity == ref.parity && s.n == ref.n && s.m == ref.m)
                solved = &s;
        if (solved == nullptr) {
            report.entries.push_back(std::move(e));
            continue;
        }
        e.found = true;
        e.beta = solved->beta;
        e.beta_deviation = std::abs(solved->beta - ref.beta);

        double lead_ref = 0.0;
        e.smallest_listed = std::numeric_limits<double>::infinity();
        for (const auto& [k, c] : ref.listed) {
            e.harmonics.push_back(k);
            if (std::abs(c) > std::abs(lead_ref)) {
                lead_ref = c;
                e.lead_harmonic = k;
            }
            e.smallest_listed = std::min(e.smallest_listed, std::abs(c));
        }

        const auto coeff_of = [&](int k) {
            const int idx = solved->parity == Parity::Even ? k : k - 1;
            if (idx < 0 || idx >= static_cast<int>(solved->coeffs.size())) return 0.0;
            return solved->coeffs[idx];
        };
        const double lead = coeff_of(e.lead_harmonic);
        const double scale = lead != 0.0 ? lead_ref / lead : 0.0;

        for (const auto& [k, c] : ref.listed) {
            e.ratios.push_back(coeff_of(k) / lead);
            e.ratios_reference.push_back(c / lead_ref);
            e.max_ratio_deviation =
                std::max(e.max_ratio_deviation, std::abs(e.ratios.back() - e.ratios_reference.back()));
        }
        for (std::size_t i = 0; i < solved->coeffs.size(); ++i) {
            const double scaled = solved->coeffs[i] * scale;
            e.rescaled.push_back(scaled);
            const int k = solved->harmonic(i);
            const bool listed = std::any_of(ref.listed.begin(), ref.listed.end(),
                                            [k](const auto& kc) { return kc.first == k; });
            if (!listed) e.max_unlisted = std::max(e.max_unlisted, std::abs(scaled));
        }
        e.unlisted_small = e.max_unlisted <= e.smallest_listed / 10.0;

        report.max_beta_deviation = std::max(report.max_beta_deviation, e.beta_deviation);
        report.max_ratio_deviation = std::max(report.max_ratio_deviation, e.max_ratio_deviation);
        report.entries.push_back(std::move(e));
    }
    return report;
}

} // namespace bohm
