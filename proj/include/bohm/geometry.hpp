#pragma once

#include <string_view>

namespace bohm {

/// Which surface a computation lives on: the embedded torus T² or the flat
/// periodic strip F² used as its zero-curvature analog.
enum class SurfaceKind { Torus, FlatStrip };

std::string_view to_string(SurfaceKind kind);
SurfaceKind parse_surface_kind(std::string_view text);

/// Major radius R, minor radius a and their ratio alpha = a/R.
///
/// alpha is derived on construction and never stored independently, so the
/// three fields cannot disagree. Construction rejects R <= 0, a <= 0 and
/// a >= R (the azimuthal scale factor 1 + alpha cos(theta) must stay positive).
class TorusShape {
  public:
    TorusShape(double major_radius, double minor_radius);

    /// R = 1, a = 1/2.
    static TorusShape reference();

    double R() const { return R_; }
    double a() const { return a_; }
    double alpha() const { return alpha_; }

    bool operator==(const TorusShape&) const = default;

  private:
    double R_;
    double a_;
    double alpha_;
};

struct MetricDiag {
    double g_tt; // theta-theta component
    double g_pp; // phi-phi component
};

struct Curvatures {
    double gaussian;
    double mean;
};

/// G(theta) = 1 + alpha cos(theta).
double scale_factor_G(const TorusShape& shape, double theta);

/// dG/dtheta.
double scale_factor_G_prime(const TorusShape& shape, double theta);

/// Torus: (a², (R + a cos θ)²). Flat strip: (a², R²), independent of θ.
MetricDiag metric_diag(const TorusShape& shape, SurfaceKind kind, double theta);

/// Gaussian and mean curvature of the embedded torus at poloidal angle theta.
Curvatures torus_curvatures(const TorusShape& shape, double theta);

/// Same as torus_curvatures on T²; the flat strip returns (0, 0).
Curvatures curvatures(const TorusShape& shape, SurfaceKind kind, double theta);

/// Reduce an accumulated angle to [0, 2π).
double wrap_angle(double angle);

} // namespace bohm
