#pragma once

#include "bohm/wavefield.hpp"

#include <string>
#include <vector>

namespace bohm {

struct TrajectoryConfig {
    Superposition sp;
    double theta0 = 0.0;
    double phi0 = 0.0;
    double t_end = 10.0;
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double sample_dt = 0.01;

    /// Throws std::invalid_argument on t_end <= 0, tolerances outside (0, 1)
    /// or sample_dt <= 0.
    void validate() const;
};

struct TrajectorySample {
    double t;
    double theta; // unreduced
    double phi;   // unreduced
    double theta_dot;
    double phi_dot;
};

enum class RunStatus { Completed, NodeStopped };

std::string_view to_string(RunStatus status);

struct TrajectoryRecord {
    std::vector<TrajectorySample> samples;
    RunStatus status = RunStatus::Completed;
    double stop_time = 0.0; // last accepted time when node-stopped
    std::string stop_reason;
};

/// Sample times k·sample_dt, k = 0 … ⌊t_end/sample_dt⌋.
std::vector<double> sample_times(double t_end, double sample_dt);

/// Integrate dθ/dt, dφ/dt = (inverse metric)·∇S with adaptive Dormand–Prince
/// steps and dense output at the sample times. Velocities in the record are
/// recomputed from the field at each sampled point.
///
/// A node encountered during integration stops the run and returns the
/// partial record with status NodeStopped. Step-size underflow throws
/// ode::StepSizeUnderflow.
TrajectoryRecord integrate_trajectory(const TrajectoryConfig& cfg);

struct PhasePoint {
    double theta_mod;
    double theta_dot;
};

/// (θ mod 2π, θ̇) for each sample.
std::vector<PhasePoint> phase_space_series(const TrajectoryRecord& record);

struct SeparationSample {
    double t;
    double separation;
};

struct SensitivityPair {
    TrajectoryRecord first;
    TrajectoryRecord second;
    std::vector<SeparationSample> separation; // over the samples both runs reached
};

/// Run cfg and cfg with θ₀ + delta_theta0; the separation is the metric
/// length √(g_θθ Δθ² + g_φφ Δφ²) evaluated at the first trajectory's point.
SensitivityPair sensitivity_pair(const TrajectoryConfig& cfg, double delta_theta0);

} // namespace bohm
