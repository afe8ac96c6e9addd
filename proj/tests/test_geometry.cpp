#include "bohm/geometry.hpp"

#include "doctest.h"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace bohm;

namespace {

constexpr double pi = std::numbers::pi;

using Vec3 = std::array<double, 3>;

Vec3 embed(const TorusShape& s, double th, double ph) {
    const double rho = s.R() + s.a() * std::cos(th);
    return {rho * std::cos(ph), rho * std::sin(ph), s.a() * std::sin(th)};
}

Vec3 sub(const Vec3& x, const Vec3& y) { return {x[0] - y[0], x[1] - y[1], x[2] - y[2]}; }
double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }
Vec3 cross(const Vec3& x, const Vec3& y) {
    return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}
Vec3 scale(const Vec3& x, double k) { return {k * x[0], k * x[1], k * x[2]}; }

// Fundamental forms of the embedding by central differences.
Curvatures embedding_curvatures(const TorusShape& s, double th, double ph) {
    const double h = 1e-4;
    auto X = [&](double dt, double dp) { return embed(s, th + dt, ph + dp); };
    const Vec3 xt = scale(sub(X(h, 0), X(-h, 0)), 0.5 / h);
    const Vec3 xp = scale(sub(X(0, h), X(0, -h)), 0.5 / h);
    const Vec3 c = X(0, 0);
    const Vec3 xtt = scale(sub(sub(X(h, 0), c), sub(c, X(-h, 0))), 1.0 / (h * h));
    const Vec3 xpp = scale(sub(sub(X(0, h), c), sub(c, X(0, -h))), 1.0 / (h * h));
    const Vec3 xtp = scale(sub(sub(X(h, h), X(h, -h)), sub(X(-h, h), X(-h, -h))), 0.25 / (h * h));
    Vec3 n = cross(xt, xp);
    n = scale(n, 1.0 / std::sqrt(dot(n, n)));
    const double E = dot(xt, xt), F = dot(xt, xp), G = dot(xp, xp);
    const double L = dot(xtt, n), M = dot(xtp, n), N = dot(xpp, n);
    const double det = E * G - F * F;
    // x_θ × x_φ points into the tube, so the outer equator comes out positive.
    const double K = (L * N - M * M) / det;
    const double H = (E * N - 2 * F * M + G * L) / (2 * det);
    return {K, H};
}

} // namespace

TEST_CASE("shape validation") {
    CHECK_THROWS_AS(TorusShape(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(TorusShape(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(TorusShape(-1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(TorusShape(1.0, 1.5), std::invalid_argument);
    const TorusShape s = TorusShape::reference();
    CHECK(s.alpha() == 0.5);
    CHECK(TorusShape(4.0, 1.0).alpha() == 0.25);
}

TEST_CASE("scale factor examples") {
    const TorusShape s = TorusShape::reference();
    CHECK(scale_factor_G(s, 0.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(scale_factor_G(s, pi) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(scale_factor_G(s, pi / 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(scale_factor_G_prime(s, pi / 2) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("metric components") {
    const TorusShape s = TorusShape::reference();
    const MetricDiag t = metric_diag(s, SurfaceKind::Torus, 0.0);
    CHECK(t.g_tt == doctest::Approx(0.25));
    CHECK(t.g_pp == doctest::Approx(2.25));
    const MetricDiag in = metric_diag(s, SurfaceKind::Torus, pi);
    CHECK(in.g_pp == doctest::Approx(0.25));
    for (double th : {0.0, 1.0, pi, 4.0}) {
        const MetricDiag f = metric_diag(s, SurfaceKind::FlatStrip, th);
        CHECK(f.g_tt == 0.25);
        CHECK(f.g_pp == 1.0);
    }
}

TEST_CASE("metric agrees with the embedding") {
    const TorusShape s(1.7, 0.6);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 2 * pi);
    for (int k = 0; k < 20; ++k) {
        const double th = u(rng), ph = u(rng), h = 1e-6;
        const Vec3 xt = scale(sub(embed(s, th + h, ph), embed(s, th - h, ph)), 0.5 / h);
        const Vec3 xp = scale(sub(embed(s, th, ph + h), embed(s, th, ph - h)), 0.5 / h);
        const MetricDiag g = metric_diag(s, SurfaceKind::Torus, th);
        CHECK(dot(xt, xt) == doctest::Approx(g.g_tt).epsilon(1e-8));
        CHECK(dot(xp, xp) == doctest::Approx(g.g_pp).epsilon(1e-8));
        CHECK(std::abs(dot(xt, xp)) < 1e-8);
    }
}

TEST_CASE("curvatures") {
    const TorusShape s = TorusShape::reference();
    const Curvatures outer = torus_curvatures(s, 0.0);
    CHECK(outer.gaussian == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(torus_curvatures(s, pi).gaussian == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(torus_curvatures(s, pi / 2).gaussian == doctest::Approx(0.0));

    for (double th : {0.0, 0.7, pi / 2, 2.0, pi, 4.5}) {
        const Curvatures c = torus_curvatures(s, th);
        const Curvatures fd = embedding_curvatures(s, th, 0.3);
        CHECK(c.gaussian == doctest::Approx(fd.gaussian).epsilon(1e-5));
        CHECK(c.mean == doctest::Approx(fd.mean).epsilon(1e-5));
        CHECK(torus_curvatures(s, -th).gaussian == doctest::Approx(c.gaussian).epsilon(1e-14));
    }
    const Curvatures f = curvatures(s, SurfaceKind::FlatStrip, 1.0);
    CHECK(f.gaussian == 0.0);
    CHECK(f.mean == 0.0);
}

TEST_CASE("Gauss-Bonnet: total curvature vanishes") {
    const TorusShape s(1.3, 0.4);
    const int n = 400;
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        const double th = 2 * pi * k / n;
        const double dA = s.a() * (s.R() + s.a() * std::cos(th)) * (2 * pi / n) * (2 * pi);
        total += torus_curvatures(s, th).gaussian * dA;
    }
    CHECK(std::abs(total) < 1e-12);
}

TEST_CASE("angle wrapping") {
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(2 * pi) == 0.0);
    CHECK(wrap_angle(-0.5) == doctest::Approx(2 * pi - 0.5));
    CHECK(wrap_angle(7.0) == doctest::Approx(7.0 - 2 * pi));
    CHECK(wrap_angle(-1e-300) < 2 * pi);
}

TEST_CASE("surface kind names") {
    CHECK(parse_surface_kind("T2") == SurfaceKind::Torus);
    CHECK(parse_surface_kind("flat") == SurfaceKind::FlatStrip);
    CHECK(to_string(SurfaceKind::Torus) == "torus");
    CHECK_THROWS(parse_surface_kind("sphere"));
}
