#include "bohm/dynamics.hpp"

#include "sampled_run.hpp"

#include <cmath>

namespace bohm {

std::string_view to_string(RunStatus status) {
    return status == RunStatus::Completed ? "completed" : "node_stopped";
}

void TrajectoryConfig::validate() const {
    if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    if (!(rel_tol > 0.0 && rel_tol < 1.0) || !(abs_tol > 0.0 && abs_tol < 1.0))
        throw std::invalid_argument("tolerances must lie in (0, 1)");
    if (!(sample_dt > 0.0)) throw std::invalid_argument("sample_dt must be positive");
}

std::vector<double> sample_times(double t_end, double sample_dt) {
    const auto count = static_cast<std::size_t>(std::floor(t_end / sample_dt * (1.0 + 1e-12)));
    std::vector<double> times;
    times.reserve(count + 1);
    for (std::size_t k = 0; k <= count; ++k) times.push_back(std::min(static_cast<double>(k) * sample_dt, t_end));
    return times;
}

TrajectoryRecord integrate_trajectory(const TrajectoryConfig& cfg) {
    cfg.validate();
    const Superposition& sp = cfg.sp;
    const SurfaceKind kind = sp.kind();
    const TorusShape& shape = sp.shape();

    auto rhs = [&](double t, const std::array<double, 2>& y, std::array<double, 2>& dy) {
        const Velocity v = velocity(evaluate_jet(sp, y[0], y[1], t), kind, shape, y[0]);
        dy[0] = v.theta_dot;
        dy[1] = v.phi_dot;
    };

    const std::vector<double> times = sample_times(cfg.t_end, cfg.sample_dt);
    TrajectoryRecord record;
    record.samples.reserve(times.size());
    const auto outcome = detail::sampled_run<2>(
        rhs, {cfg.theta0, cfg.phi0}, cfg.t_end, times, detail::step_tolerances(cfg.rel_tol, cfg.abs_tol),
        [&](std::size_t, double t, const std::array<double, 2>& y) {
            const Velocity v = velocity(evaluate_jet(sp, y[0], y[1], t), kind, shape, y[0]);
            record.samples.push_back({t, y[0], y[1], v.theta_dot, v.phi_dot});
        },
        [](auto&) {});
    record.status = outcome.status;
    record.stop_time = outcome.stop_time;
    record.stop_reason = outcome.stop_reason;
    return record;
}

std::vector<PhasePoint> phase_space_series(const TrajectoryRecord& record) {
    std::vector<PhasePoint> out;
    out.reserve(record.samples.size());
    for (const auto& s : record.samples) out.push_back({wrap_angle(s.theta), s.theta_dot});
    return out;
}

SensitivityPair sensitivity_pair(const TrajectoryConfig& cfg, double delta_theta0) {
    SensitivityPair pair;
    pair.first = integrate_trajectory(cfg);
    TrajectoryConfig shifted = cfg;
    shifted.theta0 += delta_theta0;
    pair.second = integrate_trajectory(shifted);

    const std::size_t n = std::min(pair.first.samples.size(), pair.second.samples.size());
    pair.separation.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = pair.first.samples[i];
        const auto& b = pair.second.samples[i];
        const MetricDiag g = metric_diag(cfg.sp.shape(), cfg.sp.kind(), a.theta);
        const double dth = b.theta - a.theta;
        const double dph = b.phi - a.phi;
        pair.separation.push_back({a.t, std::sqrt(g.g_tt * dth * dth + g.g_pp * dph * dph)});
    }
    return pair;
}

} // namespace bohm
