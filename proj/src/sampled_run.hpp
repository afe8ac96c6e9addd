#pragma once

// Shared stepping loop: advance an integrator to t_end, hand the dense-output
// state to `on_sample` at each requested time, and turn a node encounter into
// a NodeStopped outcome instead of an exception.

#include "bohm/dynamics.hpp"
#include "bohm/ode.hpp"

#include <algorithm>
#include <span>

namespace bohm::detail {

/// Per-step tolerances for a requested (rel, abs) pair. Bohmian paths amplify
/// local errors by roughly 10^4 over t ~ 36 near nodes, so the steps run four
/// orders tighter than requested, floored where roundoff in θ takes over.
/// (θ, φ) are the first two components.
inline ode::Tolerances step_tolerances(double rel, double abs) {
    constexpr double factor = 1e-4, floor = 1e-14;
    return {std::max(rel * factor, floor), std::max(abs * factor, floor), 2};
}

struct RunOutcome {
    RunStatus status = RunStatus::Completed;
    double stop_time = 0.0;
    std::string stop_reason;
};

/// `times` must be ascending and inside [0, t_end]. `on_sample(index, t, y)`
/// is called once per time; `after_step(integrator)` runs after every accepted
/// step once its samples have been delivered.
template <std::size_t N, class Rhs, class OnSample, class AfterStep>
RunOutcome sampled_run(Rhs rhs, const std::array<double, N>& y0, double t_end, std::span<const double> times,
                       ode::Tolerances tol, OnSample&& on_sample, AfterStep&& after_step) {
    RunOutcome outcome;
    std::size_t next = 0;
    double last_t = 0.0;
    try {
        ode::DormandPrince45<N, Rhs> integ(std::move(rhs), 0.0, y0, tol);
        while (next < times.size() && times[next] <= 0.0) on_sample(next, times[next], y0), ++next;
        while (integ.t() < t_end) {
            integ.step(t_end);
            last_t = integ.t();
            while (next < times.size() && times[next] <= integ.t()) {
                const double ts = times[next];
                on_sample(next, ts, ts == integ.t() ? integ.y() : integ.dense(ts));
                ++next;
            }
            after_step(integ);
        }
    } catch (const NodeProximity& node) {
        outcome.status = RunStatus::NodeStopped;
        outcome.stop_time = last_t;
        outcome.stop_reason = node.what();
    }
    return outcome;
}

} // namespace bohm::detail
