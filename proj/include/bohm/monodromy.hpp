#pragma once

#include "bohm/dynamics.hpp"

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace bohm {

/// Metric-scaled Hessian of S; the stability matrix of the Bohmian flow.
struct JMatrix {
    double j11, j12, j21, j22;

    double trace() const { return j11 + j22; }
};

/// J_ij = S_ij / (√g_ii √g_jj). On T² this is
///   [ S_θθ/a²        S_θφ/(a R G) ]
///   [ S_φθ/(a R G)   S_φφ/(R G)²  ]
/// and on the flat strip the same with G ≡ 1.
JMatrix build_J(const SHessian& hess, SurfaceKind kind, const TorusShape& shape, double theta);

/// M(t) in row-major order (m11, m12, m21, m22). The true matrix is
/// m · 2^log2_scale; the exponent absorbs growth that would overflow.
struct MonodromyState {
    double t = 0.0;
    std::array<double, 4> m{1.0, 0.0, 0.0, 1.0};
    long log2_scale = 0;

    double log_abs_det() const;
};

/// Complex logarithms of the two eigenvalues of M (scale included), ordered
/// by descending magnitude; ties broken by descending argument. Throws
/// std::domain_error when an eigenvalue vanishes.
std::array<std::complex<double>, 2> eigen_logs(const MonodromyState& state);

struct Propagation {
    TrajectoryRecord record;
    std::vector<MonodromyState> checkpoints; // only those reached
};

/// Jointly integrate (θ, φ, M) with dM/dt = J(θ, φ, t) M, M(0) = I. Checkpoint
/// times beyond t_end are rejected. Entries are renormalised by a power of two
/// whenever they exceed 2^500.
Propagation propagate(const TrajectoryConfig& cfg, std::span<const double> checkpoints);

struct LyapunovEstimate {
    std::vector<double> times;                  // checkpoint times t > 0 in [t1, t2]
    std::vector<std::array<double, 2>> lambda_t; // (1/t) ln βᵢ(t), descending
    std::array<double, 2> lambda_t1{};          // both branches at t1
    std::array<double, 2> lambda_t2{};          // both branches at t2
    std::array<double, 2> window{};             // ln(βᵢ(t2)/βᵢ(t1)) / (t2 − t1), magnitude pairing
    bool crossed = false;                       // branches exchanged order between t1 and t2
    std::array<double, 2> window_tracked{};     // continuity pairing (equals window if !crossed)
    double lambda = 0.0;                        // larger window exponent
    int branch_taken = 0;                       // 0/1: magnitude pairing, 2/3: continuity pairing
};

/// Lyapunov exponents from monodromy checkpoints. `states` must contain t1
/// and t2; states in between are used to follow the eigenvalue branches.
LyapunovEstimate lyapunov(std::span<const MonodromyState> states, double t1, double t2);

struct SweepOptions {
    double t1 = 9.0;
    double t2 = 10.0;
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double tracking_dt = 0.01; // checkpoint spacing between t1 and t2
    double phi0 = 0.0;
    unsigned jobs = 1;
};

struct TableRow {
    double theta0 = 0.0;
    RunStatus status = RunStatus::Completed;
    bool ok = false; // false when a checkpoint was not reached
    std::string note;
    double lambda_t1 = 0.0; // λ₉ for the default window
    double lambda_t2 = 0.0; // λ₁₀
    double lambda = 0.0;    // windowed exponent
    bool crossed = false;
};

/// One monodromy propagation per θ₀. Rows come back in input order. Throws
/// std::invalid_argument for an empty grid.
std::vector<TableRow> table_sweep(const Superposition& sp, std::span<const double> theta0_list,
                                  const SweepOptions& options = {});

} // namespace bohm
