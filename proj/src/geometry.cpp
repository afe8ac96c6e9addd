#include "bohm/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace bohm {

std::string_view to_string(SurfaceKind kind) {
    return kind == SurfaceKind::Torus ? "torus" : "flat";
}

SurfaceKind parse_surface_kind(std::string_view text) {
    if (text == "torus" || text == "T2") return SurfaceKind::Torus;
    if (text == "flat" || text == "F2") return SurfaceKind::FlatStrip;
    throw std::invalid_argument("unknown surface kind '" + std::string(text) + "'");
}

TorusShape::TorusShape(double major_radius, double minor_radius)
    : R_(major_radius), a_(minor_radius), alpha_(minor_radius / major_radius) {
    if (!(R_ > 0.0) || !(a_ > 0.0) || !(alpha_ < 1.0) || !std::isfinite(R_) || !std::isfinite(a_)) {
        std::ostringstream msg;
        msg << "invalid torus shape R=" << R_ << " a=" << a_ << " (need R > 0, 0 < a < R)";
        throw std::invalid_argument(msg.str());
    }
}

TorusShape TorusShape::reference() { return TorusShape(1.0, 0.5); }

double scale_factor_G(const TorusShape& shape, double theta) {
    return 1.0 + shape.alpha() * std::cos(theta);
}

double scale_factor_G_prime(const TorusShape& shape, double theta) {
    return -shape.alpha() * std::sin(theta);
}

MetricDiag metric_diag(const TorusShape& shape, SurfaceKind kind, double theta) {
    const double a2 = shape.a() * shape.a();
    if (kind == SurfaceKind::FlatStrip) return {a2, shape.R() * shape.R()};
    const double rho = shape.R() + shape.a() * std::cos(theta);
    return {a2, rho * rho};
}

Curvatures torus_curvatures(const TorusShape& shape, double theta) {
    const double R = shape.R();
    const double a = shape.a();
    const double c = std::cos(theta);
    const double rho = R + a * c;
    return {c / (a * rho), (R + 2.0 * a * c) / (2.0 * a * rho)};
}

Curvatures curvatures(const TorusShape& shape, SurfaceKind kind, double theta) {
    if (kind == SurfaceKind::FlatStrip) return {0.0, 0.0};
    return torus_curvatures(shape, theta);
}

double wrap_angle(double angle) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(angle, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

} // namespace bohm
