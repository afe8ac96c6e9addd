#include "bohm/monodromy.hpp"

#include "bohm/parallel.hpp"
#include "sampled_run.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bohm {

namespace {

constexpr int kRescaleExponent = 500;

using Logs = std::array<std::complex<double>, 2>;

double angular_distance(double a, double b) {
    double d = std::remainder(a - b, 2.0 * std::numbers::pi);
    return std::abs(d);
}

double log_distance(std::complex<double> x, std::complex<double> y) {
    return std::abs(x.real() - y.real()) + angular_distance(x.imag(), y.imag());
}

const MonodromyState* find_at(std::span<const MonodromyState> states, double t) {
    for (const auto& s : states)
        if (std::abs(s.t - t) <= 1e-9 * std::max(1.0, std::abs(t))) return &s;
    return nullptr;
}

} // namespace

JMatrix build_J(const SHessian& hess, SurfaceKind kind, const TorusShape& shape, double theta) {
    const double sqrt_gtt = shape.a();
    const double sqrt_gpp = kind == SurfaceKind::Torus ? shape.R() * scale_factor_G(shape, theta) : shape.R();
    const double off = hess.s_tp / (sqrt_gtt * sqrt_gpp);
    return {hess.s_tt / (sqrt_gtt * sqrt_gtt), off, off, hess.s_pp / (sqrt_gpp * sqrt_gpp)};
}

double MonodromyState::log_abs_det() const {
    const double det = m[0] * m[3] - m[1] * m[2];
    return std::log(std::abs(det)) + 2.0 * static_cast<double>(log2_scale) * std::numbers::ln2;
}

Logs eigen_logs(const MonodromyState& state) {
    // Bring the largest entry to [0.5, 1) by an exact power of two so the
    // discriminant cannot overflow.
    const double peak = std::max({std::abs(state.m[0]), std::abs(state.m[1]), std::abs(state.m[2]), std::abs(state.m[3])});
    if (!std::isfinite(peak)) throw std::domain_error("monodromy matrix is not finite");
    int e = 0;
    if (peak > 0.0) std::frexp(peak, &e);
    const double a = std::ldexp(state.m[0], -e), b = std::ldexp(state.m[1], -e);
    const double c = std::ldexp(state.m[2], -e), d = std::ldexp(state.m[3], -e);
    const double half_trace = 0.5 * (a + d);
    const double half_diff = 0.5 * (a - d);
    const double disc = half_diff * half_diff + b * c;
    const double det = a * d - b * c;
    const double shift = static_cast<double>(state.log2_scale + e) * std::numbers::ln2;

    std::complex<double> big, small;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        const double e1 = half_trace + std::copysign(root, half_trace);
        if (e1 == 0.0) throw std::domain_error("monodromy matrix has a vanishing eigenvalue");
        const double e2 = det / e1;
        big = std::complex<double>(e1, 0.0);
        small = std::complex<double>(e2, 0.0);
    } else {
        big = std::complex<double>(half_trace, std::sqrt(-disc));
        small = std::conj(big);
    }
    if (std::abs(big) == 0.0 || std::abs(small) == 0.0)
        throw std::domain_error("monodromy matrix has a vanishing eigenvalue");

    const auto clog = [shift](std::complex<double> z) {
        return std::complex<double>(std::log(std::abs(z)) + shift, std::arg(z));
    };
    Logs out{clog(big), clog(small)};
    if (out[1].real() > out[0].real() || (out[1].real() == out[0].real() && out[1].imag() > out[0].imag()))
        std::swap(out[0], out[1]);
    return out;
}

Propagation propagate(const TrajectoryConfig& cfg, std::span<const double> checkpoints) {
    cfg.validate();
    for (double t : checkpoints)
        if (t < 0.0 || t > cfg.t_end) {
            std::ostringstream msg;
            msg << "checkpoint t=" << t << " outside [0, " << cfg.t_end << "]";
            throw std::invalid_argument(msg.str());
        }

    const Superposition& sp = cfg.sp;
    const SurfaceKind kind = sp.kind();
    const TorusShape& shape = sp.shape();

    using State = std::array<double, 6>;
    auto rhs = [&](double t, const State& y, State& dy) {
        const AmplitudeJet jet = evaluate_jet(sp, y[0], y[1], t);
        const Velocity v = velocity(jet, kind, shape, y[0]);
        const JMatrix J = build_J(hessian_S(jet), kind, shape, y[0]);
        dy[0] = v.theta_dot;
        dy[1] = v.phi_dot;
        dy[2] = J.j11 * y[2] + J.j12 * y[4];
        dy[3] = J.j11 * y[3] + J.j12 * y[5];
        dy[4] = J.j21 * y[2] + J.j22 * y[4];
        dy[5] = J.j21 * y[3] + J.j22 * y[5];
    };

    // Merge trajectory samples and checkpoints into one ascending schedule.
    struct Event {
        double t;
        bool sample;
        bool checkpoint;
    };
    std::vector<Event> events;
    for (double t : sample_times(cfg.t_end, cfg.sample_dt)) events.push_back({t, true, false});
    for (double t : checkpoints) events.push_back({t, false, true});
    std::stable_sort(events.begin(), events.end(), [](const Event& x, const Event& y) { return x.t < y.t; });
    std::vector<double> times;
    times.reserve(events.size());
    for (const auto& e : events) times.push_back(e.t);

    Propagation out;
    long log2_scale = 0;
    const auto outcome = detail::sampled_run<6>(
        rhs, State{cfg.theta0, cfg.phi0, 1.0, 0.0, 0.0, 1.0}, cfg.t_end, times, detail::step_tolerances(cfg.rel_tol, cfg.abs_tol),
        [&](std::size_t index, double t, const State& y) {
            const Event& e = events[index];
            if (e.sample) {
                const Velocity v = velocity(evaluate_jet(sp, y[0], y[1], t), kind, shape, y[0]);
                out.record.samples.push_back({t, y[0], y[1], v.theta_dot, v.phi_dot});
            }
            if (e.checkpoint) out.checkpoints.push_back({t, {y[2], y[3], y[4], y[5]}, log2_scale});
        },
        [&](auto& integ) {
            const State& y = integ.y();
            const double biggest = std::max({std::abs(y[2]), std::abs(y[3]), std::abs(y[4]), std::abs(y[5])});
            if (biggest > std::ldexp(1.0, kRescaleExponent)) {
                const int k = std::ilogb(biggest);
                integ.scale_components(2, 4, std::ldexp(1.0, -k));
                log2_scale += k;
            }
        });
    out.record.status = outcome.status;
    out.record.stop_time = outcome.stop_time;
    out.record.stop_reason = outcome.stop_reason;
    return out;
}

LyapunovEstimate lyapunov(std::span<const MonodromyState> states, double t1, double t2) {
    if (!(t2 > t1) || !(t1 > 0.0)) throw std::invalid_argument("lyapunov window needs 0 < t1 < t2");
    const MonodromyState* s1 = find_at(states, t1);
    const MonodromyState* s2 = find_at(states, t2);
    if (s1 == nullptr || s2 == nullptr) {
        std::ostringstream msg;
        msg << "no monodromy checkpoint at t=" << (s1 == nullptr ? t1 : t2);
        throw std::invalid_argument(msg.str());
    }

    LyapunovEstimate est;
    const Logs l1 = eigen_logs(*s1);
    const Logs l2 = eigen_logs(*s2);
    const double span_t = t2 - t1;
    for (int i = 0; i < 2; ++i) {
        est.lambda_t1[i] = l1[i].real() / t1;
        est.lambda_t2[i] = l2[i].real() / t2;
        est.window[i] = (l2[i].real() - l1[i].real()) / span_t;
    }

    // Follow the branches through the intermediate checkpoints; each step
    // either keeps or exchanges the magnitude ranks, whichever is closer in
    // complex log space.
    bool exchanged = false;
    Logs prev = l1;
    for (const auto& s : states) {
        if (s.t <= 0.0 || s.t < t1 - 1e-12 || s.t > t2 + 1e-12) continue;
        est.times.push_back(s.t);
        const Logs cur = eigen_logs(s);
        est.lambda_t.push_back({cur[0].real() / s.t, cur[1].real() / s.t});
        if (s.t <= t1 + 1e-12) continue;
        const double keep = log_distance(cur[0], prev[0]) + log_distance(cur[1], prev[1]);
        const double swap = log_distance(cur[0], prev[1]) + log_distance(cur[1], prev[0]);
        if (swap < keep) exchanged = !exchanged;
        prev = cur;
    }
    est.crossed = exchanged;
    if (est.crossed) {
        est.window_tracked[0] = (l2[1].real() - l1[0].real()) / span_t;
        est.window_tracked[1] = (l2[0].real() - l1[1].real()) / span_t;
    } else {
        est.window_tracked = est.window;
    }

    est.lambda = est.window[0];
    est.branch_taken = 0;
    if (est.window[1] > est.lambda) {
        est.lambda = est.window[1];
        est.branch_taken = 1;
    }
    if (est.crossed) {
        for (int i = 0; i < 2; ++i)
            if (est.window_tracked[i] > est.lambda) {
                est.lambda = est.window_tracked[i];
                est.branch_taken = 2 + i;
            }
    }
    return est;
}

std::vector<TableRow> table_sweep(const Superposition& sp, std::span<const double> theta0_list,
                                  const SweepOptions& options) {
    if (theta0_list.empty()) throw std::invalid_argument("no theta0 points");

    std::vector<double> checkpoints;
    const auto steps = static_cast<long>(std::llround((options.t2 - options.t1) / options.tracking_dt));
    for (long k = 0; k <= steps; ++k)
        checkpoints.push_back(k == steps ? options.t2 : options.t1 + static_cast<double>(k) * options.tracking_dt);

    return parallel_map<TableRow>(theta0_list.size(), options.jobs, [&](std::size_t i) {
        TableRow row;
        row.theta0 = theta0_list[i];
        TrajectoryConfig cfg{sp, theta0_list[i], options.phi0, options.t2, options.rel_tol, options.abs_tol,
                             options.t2 - options.t1};
        const Propagation prop = propagate(cfg, checkpoints);
        row.status = prop.record.status;
        try {
            const LyapunovEstimate est = lyapunov(prop.checkpoints, options.t1, options.t2);
            row.lambda_t1 = std::max(est.lambda_t1[0], est.lambda_t1[1]);
            row.lambda_t2 = std::max(est.lambda_t2[0], est.lambda_t2[1]);
            row.lambda = est.lambda;
            row.crossed = est.crossed;
            row.ok = true;
        } catch (const std::exception& e) {
            row.note = prop.record.status == RunStatus::NodeStopped ? prop.record.stop_reason : e.what();
        }
        return row;
    });
}

} // namespace bohm
