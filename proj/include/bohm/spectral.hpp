#pragma once

#include "bohm/geometry.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bohm {

/// Symmetry under θ → −θ. Even states are cosine series (including the
/// constant), odd states are sine series.
enum class Parity { Even, Odd };

char parity_symbol(Parity p); // '+' or '-'
Parity parse_parity(std::string_view text);

/// One stationary state ψ(θ)·e^{imφ}.
///
/// `coeffs[k]` multiplies cos(kθ) for even states and sin((k+1)θ) for odd
/// states. States are normalised to ∫₀^{2π} ψ² G dθ = 1 (G ≡ 1 on the flat
/// strip), and `energy == beta / (2a²)`.
struct StationaryState {
    SurfaceKind kind = SurfaceKind::Torus;
    Parity parity = Parity::Even;
    int n = 0;
    int m = 0;
    std::vector<double> coeffs;
    double beta = 0.0;
    double energy = 0.0;

    /// Harmonic number attached to coeffs[index].
    int harmonic(std::size_t index) const {
        return parity == Parity::Even ? static_cast<int>(index) : static_cast<int>(index) + 1;
    }

    /// Label such as "psi+_32".
    std::string label() const;
};

/// Replace β (and with it E) keeping the coefficients.
StationaryState with_beta(StationaryState state, double beta, const TorusShape& shape);

class SpectralError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SpectralProblem {
    TorusShape shape = TorusShape::reference();
    int m = 0;
    Parity parity = Parity::Even;
    int basis_size = 32;
};

/// Solve the torus surface equation
///   ψ'' − α sinθ/(1+α cosθ) ψ' − m²α²/(1+α cosθ)² ψ + βψ = 0
/// by Galerkin projection onto the Fourier basis of the requested parity.
/// Multiplying through by G turns it into the symmetric pencil
///   ∫G φᵢ'φⱼ' + m²α² ∫φᵢφⱼ/G  =  β ∫G φᵢφⱼ,
/// whose eigenpairs are returned in ascending β. n is assigned by rank:
/// n = rank for even states (n = 0 is the ground state), rank + 1 for odd.
std::vector<StationaryState> solve_torus_states(const SpectralProblem& problem);

/// Convenience: the state with label (parity, n, m).
StationaryState torus_state(const TorusShape& shape, Parity parity, int n, int m,
                            int basis_size = 32);

/// Flat-strip analog cos(nθ)e^{imφ} or sin(nθ)e^{imφ} with β = n² + m²α², so
/// that E = n²/(2a²) + m²/(2R²) under the flat metric.
StationaryState flat_state(int n, int m, Parity parity, const TorusShape& shape);

/// Evaluate ψ, ψ', ψ'' of a state at θ.
struct ModeValues {
    double f;
    double df;
    double d2f;
};
ModeValues evaluate_mode(const StationaryState& state, double theta);

/// Comparison of solved states against the tabulated ones.
struct Table1Entry {
    std::string label;
    bool found = false;           // a solved state with this label was supplied
    double beta = 0.0;
    double beta_reference = 0.0;
    double beta_deviation = 0.0;
    int lead_harmonic = 0;        // harmonic of the largest tabulated coefficient
    std::vector<int> harmonics;   // tabulated harmonics
    std::vector<double> ratios;            // c_k / c_lead, solved
    std::vector<double> ratios_reference;  // c_k / c_lead, tabulated
    double max_ratio_deviation = 0.0;
    std::vector<double> rescaled;          // solved coefficients scaled to the tabulated lead
    double max_unlisted = 0.0;             // largest |unlisted| after rescaling
    double smallest_listed = 0.0;          // smallest |tabulated coefficient|
    bool unlisted_small = false;           // max_unlisted <= smallest_listed / 10
};

struct Table1Report {
    std::vector<Table1Entry> entries;
    double max_beta_deviation = 0.0;
    double max_ratio_deviation = 0.0;
};

/// Compare against the tabulated states. Only convention-free quantities
/// (β and coefficient ratios) are meaningful; rescaled coefficients are for
/// display.
Table1Report verify_against_table1(std::span<const StationaryState> states);

/// The six tabulated labels solved for the given shape.
std::vector<StationaryState> solve_reference_states(const TorusShape& shape, int basis_size = 32);

} // namespace bohm
