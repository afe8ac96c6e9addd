#pragma once

#include "bohm/geometry.hpp"
#include "bohm/spectral.hpp"

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace bohm {

using cplx = std::complex<double>;

/// Raised when the amplitude is too small for the phase S to be defined.
class NodeProximity : public std::runtime_error {
  public:
    NodeProximity(double theta, double phi, double t, double density);
    double theta;
    double phi;
    double t;
    double density;
};

struct Term {
    StationaryState state;
    cplx weight;
};

/// Immutable weighted sum Σ c_j ψ_j(θ) e^{i m_j φ} e^{−i E_j t}.
class Superposition {
  public:
    /// Throws std::invalid_argument unless every term lives on `kind`,
    /// Σ|c|² = 1 within 1e-12 and there is at least one term.
    Superposition(std::vector<Term> terms, SurfaceKind kind, TorusShape shape);

    /// Rescale the weights to unit norm first. `original_norm2` receives Σ|c|²
    /// before rescaling.
    static Superposition normalized(std::vector<Term> terms, SurfaceKind kind, TorusShape shape,
                                    double* original_norm2 = nullptr);

    const std::vector<Term>& terms() const { return terms_; }
    SurfaceKind kind() const { return kind_; }
    const TorusShape& shape() const { return shape_; }

    /// |Ψ|² below this counts as a node.
    double node_threshold() const { return node_threshold_; }

    /// True when every term shares one azimuthal number.
    bool single_m() const;

    /// Largest harmonic index over all terms.
    int max_harmonic() const { return max_harmonic_; }

    /// c_j / c_0 for each term.
    const std::vector<cplx>& relative_weights() const { return relative_weights_; }

  private:
    std::vector<Term> terms_;
    SurfaceKind kind_;
    TorusShape shape_;
    std::vector<cplx> relative_weights_;
    int max_harmonic_ = 0;
    double node_threshold_ = 0.0;
};

/// Ψ and its first and second (θ, φ) partials at one point.
///
/// Stored as Ψ = carrier · u, where the carrier c₀ e^{i(m₀φ − E₀t)} belongs to
/// the first term and u is the remaining envelope. Ratios such as Ψ_θ/Ψ are
/// formed from u alone, so a single stationary state yields exactly real
/// ratios and exactly zero phase curvature.
struct AmplitudeJet {
    cplx carrier{1.0, 0.0};
    int carrier_m = 0;
    cplx u, u_t, u_p, u_tt, u_tp, u_pp;
    double node_threshold = 0.0;
    double theta = 0.0, phi = 0.0, t = 0.0;

    cplx psi() const { return carrier * u; }
    cplx d_theta() const { return carrier * u_t; }
    cplx d_phi() const { return carrier * (u_p + cplx(0.0, carrier_m) * u); }
    cplx d_theta_theta() const { return carrier * u_tt; }
    cplx d_theta_phi() const { return carrier * (u_tp + cplx(0.0, carrier_m) * u_t); }
    cplx d_phi_phi() const {
        const double m = carrier_m;
        return carrier * (u_pp + cplx(0.0, 2.0 * m) * u_p - m * m * u);
    }
    double density() const { return std::norm(u) * std::norm(carrier); }
};

/// Second coordinate partials of S.
struct SHessian {
    double s_tt;
    double s_tp;
    double s_pp;
};

struct PhaseGradient {
    double s_t;
    double s_p;
};

struct Velocity {
    double theta_dot;
    double phi_dot;
};

AmplitudeJet evaluate_jet(const Superposition& sp, double theta, double phi, double t);

/// S = atan2(Im Ψ, Re Ψ) in (−π, π].
double phase_S(const AmplitudeJet& jet);

/// (∂θ S, ∂φ S).
PhaseGradient gradient_S(const AmplitudeJet& jet);

/// Contravariant gradient of S: θ̇ = S_θ/g_θθ, φ̇ = S_φ/g_φφ.
Velocity velocity(const AmplitudeJet& jet, SurfaceKind kind, const TorusShape& shape, double theta);

/// S_ij = Im(Ψ_ij/Ψ − Ψ_iΨ_j/Ψ²).
SHessian hessian_S(const AmplitudeJet& jet);

/// Q = −½ ∇²|Ψ| / |Ψ| with the Laplace–Beltrami operator of the surface.
double quantum_potential(const Superposition& sp, double theta, double phi, double t);

/// ∫∫ |Ψ|² dA over the surface (dA = a R G dθ dφ on T², a R dθ dφ on F²).
double surface_norm(const Superposition& sp, double t, int nodes_theta = 128, int nodes_phi = 64);

/// Keeps successive phase samples continuous along a path.
class PhaseUnwrapper {
  public:
    double operator()(double wrapped);
    void reset() {
        last_.reset();
        offset_ = 0.0;
    }

  private:
    std::optional<double> last_;
    double offset_ = 0.0;
};

} // namespace bohm
