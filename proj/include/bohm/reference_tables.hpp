#pragma once

// Published reference values the solver and the Lyapunov sweeps are compared
// against. Values are transcribed verbatim, including cells that turn out to
// be internally inconsistent; consistency is checked, not assumed.

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace bohm {

enum class Parity;

/// One surface toroidal state for R = 1, a = 1/2. Coefficients are listed
/// against basis indices: for even states index k means cos(kθ), for odd
/// states index k means sin(kθ).
struct ReferenceState {
    Parity parity;
    int n;
    int m;
    std::vector<std::pair<int, double>> listed; // (harmonic k, coefficient)
    double beta;
};

/// The six tabulated eigenstates, in the order Ψ⁺₁₀, Ψ⁺₂₁, Ψ⁺₃₂, Ψ⁻₁₀, Ψ⁻₂₁, Ψ⁻₃₂.
std::span<const ReferenceState> reference_states();

/// Look up a tabulated state by label; nullptr if it is not tabulated.
const ReferenceState* find_reference_state(Parity parity, int n, int m);

/// One half (T² or F²) of a published Lyapunov table over the 12-point grid
/// θ₀ = kπ/6. `decimals_*` is the number of printed digits after the point for
/// each cell, used to bound rounding error when checking the windowing identity.
struct ReferenceLyapunovHalf {
    std::array<double, 12> lambda9;
    std::array<double, 12> lambda10;
    std::array<double, 12> lambda;
    std::array<int, 12> decimals9;
    std::array<int, 12> decimals10;
    std::array<int, 12> decimals_lambda;
};

struct ReferenceLyapunovTable {
    std::string_view source; // preset name
    ReferenceLyapunovHalf torus;
    ReferenceLyapunovHalf flat;
};

const ReferenceLyapunovTable& reference_table2();
const ReferenceLyapunovTable& reference_table3();

/// θ₀ grid {0, π/6, …, 11π/6}.
std::array<double, 12> reference_theta0_grid();

/// Result of applying the exact windowing identity
/// λ = (t₂λ(t₂) − t₁λ(t₁)) / (t₂ − t₁) to a printed (λ₉, λ₁₀, λ) triple.
struct IdentityCheck {
    double implied;     // 10·λ₁₀ − 9·λ₉
    double printed;
    double deviation;   // |implied − printed|
    double rounding;    // worst-case deviation explainable by printed rounding
    bool consistent;    // deviation <= rounding
};

IdentityCheck check_window_identity(const ReferenceLyapunovHalf& half, std::size_t column,
                                    double t1 = 9.0, double t2 = 10.0);

} // namespace bohm
