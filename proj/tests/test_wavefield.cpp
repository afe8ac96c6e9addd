#include "bohm/wavefield.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

using namespace bohm;

namespace {

constexpr double pi = std::numbers::pi;
const TorusShape ref = TorusShape::reference();

StationaryState T(Parity p, int n, int m) { return torus_state(ref, p, n, m); }
StationaryState F(Parity p, int n, int m) { return flat_state(n, m, p, ref); }

Superposition fig4_like(SurfaceKind kind) {
    const double w = std::sqrt(1.0 / 3.0);
    auto st = [&](Parity p, int n, int m) { return kind == SurfaceKind::Torus ? T(p, n, m) : F(p, n, m); };
    return Superposition({{st(Parity::Even, 2, 1), w}, {st(Parity::Even, 3, 2), cplx(0, w)},
                          {st(Parity::Odd, 3, 2), cplx(0, -w)}},
                         kind, ref);
}

Superposition table2_like(SurfaceKind kind) {
    const double w = std::sqrt(0.5);
    auto st = [&](Parity p, int n, int m) { return kind == SurfaceKind::Torus ? T(p, n, m) : F(p, n, m); };
    return Superposition({{st(Parity::Even, 3, 2), w}, {st(Parity::Odd, 3, 2), w}}, kind, ref);
}

double phase_difference(const Superposition& sp, double t1, double p1, double t2, double p2, double t) {
    const cplx a = evaluate_jet(sp, t1, p1, t).psi();
    const cplx b = evaluate_jet(sp, t2, p2, t).psi();
    return std::arg(a * std::conj(b));
}

} // namespace

TEST_CASE("superposition validation") {
    CHECK_THROWS_AS(Superposition({{T(Parity::Even, 2, 1), 0.9}}, SurfaceKind::Torus, ref), std::invalid_argument);
    CHECK_THROWS_AS(Superposition({{F(Parity::Even, 2, 1), 1.0}}, SurfaceKind::Torus, ref), std::invalid_argument);
    CHECK_THROWS_AS(Superposition({}, SurfaceKind::Torus, ref), std::invalid_argument);
    double n2 = 0.0;
    const Superposition sp =
        Superposition::normalized({{T(Parity::Even, 2, 1), 2.0}, {T(Parity::Odd, 2, 1), cplx(0, 2)}},
                                  SurfaceKind::Torus, ref, &n2);
    CHECK(n2 == doctest::Approx(8.0));
    CHECK(std::norm(sp.terms()[0].weight) + std::norm(sp.terms()[1].weight) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sp.single_m());
    CHECK_FALSE(fig4_like(SurfaceKind::Torus).single_m());
}

TEST_CASE("single state phase and velocity") {
    const Superposition sp({{T(Parity::Even, 2, 1), 1.0}}, SurfaceKind::Torus, ref);
    const AmplitudeJet jet = evaluate_jet(sp, 0.0, 0.0, 0.0);
    // The dominant cos 2θ coefficient is negative, so ψ(0) < 0.
    CHECK(phase_S(jet) == doctest::Approx(pi).epsilon(1e-15));
    CHECK(phase_S(evaluate_jet(sp, 0.0, 0.3, 0.0)) == doctest::Approx(0.3 - pi).epsilon(1e-14));
    const Velocity v = velocity(jet, SurfaceKind::Torus, ref, 0.0);
    CHECK(v.theta_dot == 0.0);
    CHECK(v.phi_dot == doctest::Approx(1.0 / 2.25).epsilon(1e-14));
    const SHessian h = hessian_S(evaluate_jet(sp, 1.2, 0.4, 3.0));
    CHECK(h.s_tt == 0.0);
    CHECK(h.s_tp == 0.0);
    CHECK(h.s_pp == 0.0);
}

TEST_CASE("phase advances with the energy") {
    const StationaryState s = T(Parity::Even, 1, 0);
    const Superposition sp({{s, 1.0}}, SurfaceKind::Torus, ref);
    const double t = 0.4;
    const double S = phase_S(evaluate_jet(sp, 0.0, 0.0, t));
    CHECK(S == doctest::Approx(std::remainder(-s.energy * t, 2 * pi)).epsilon(1e-13));
}

TEST_CASE("node detection") {
    const Superposition sp({{T(Parity::Odd, 1, 0), 1.0}}, SurfaceKind::Torus, ref);
    const AmplitudeJet jet = evaluate_jet(sp, 0.0, 0.0, 0.0);
    CHECK_THROWS_AS(gradient_S(jet), NodeProximity);
    CHECK(sp.node_threshold() > 0.0);
}

TEST_CASE("velocity and hessian against finite differences") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ang(0.0, 2 * pi);
    std::uniform_real_distribution<double> time(0.0, 10.0);
    for (SurfaceKind kind : {SurfaceKind::Torus, SurfaceKind::FlatStrip}) {
        const Superposition sp = fig4_like(kind);
        int tested = 0;
        while (tested < 100) {
            const double th = ang(rng), ph = ang(rng), t = time(rng);
            const AmplitudeJet jet = evaluate_jet(sp, th, ph, t);
            if (jet.density() < 1e-3) continue;
            ++tested;
            const double h = 1e-5;
            const double st = phase_difference(sp, th + h, ph, th - h, ph, t) / (2 * h);
            const double sp_ = phase_difference(sp, th, ph + h, th, ph - h, t) / (2 * h);
            const MetricDiag g = metric_diag(ref, kind, th);
            const Velocity v = velocity(jet, kind, ref, th);
            CHECK(v.theta_dot == doctest::Approx(st / g.g_tt).epsilon(1e-6).scale(1.0));
            CHECK(v.phi_dot == doctest::Approx(sp_ / g.g_pp).epsilon(1e-6).scale(1.0));

            const double hh = 1e-5;
            const PhaseGradient gp = gradient_S(evaluate_jet(sp, th + hh, ph, t));
            const PhaseGradient gm = gradient_S(evaluate_jet(sp, th - hh, ph, t));
            const PhaseGradient qp = gradient_S(evaluate_jet(sp, th, ph + hh, t));
            const PhaseGradient qm = gradient_S(evaluate_jet(sp, th, ph - hh, t));
            const SHessian H = hessian_S(jet);
            const double tol = 1e-6 * std::max(1.0, std::abs(H.s_tt) + std::abs(H.s_tp) + std::abs(H.s_pp));
            CHECK(std::abs(H.s_tt - (gp.s_t - gm.s_t) / (2 * hh)) <= tol);
            CHECK(std::abs(H.s_tp - (gp.s_p - gm.s_p) / (2 * hh)) <= tol);
            CHECK(std::abs(H.s_tp - (qp.s_t - qm.s_t) / (2 * hh)) <= tol);
            CHECK(std::abs(H.s_pp - (qp.s_p - qm.s_p) / (2 * hh)) <= tol);
        }
    }
}

TEST_CASE("norm is conserved") {
    for (SurfaceKind kind : {SurfaceKind::Torus, SurfaceKind::FlatStrip})
        for (const Superposition& sp : {fig4_like(kind), table2_like(kind)}) {
            const double n0 = surface_norm(sp, 0.0);
            CHECK(n0 == doctest::Approx(2 * pi * ref.a() * ref.R()).epsilon(1e-10));
            for (double t : {0.7, 3.3, 10.0, 41.0}) CHECK(std::abs(surface_norm(sp, t) / n0 - 1.0) <= 1e-10);
        }
}

TEST_CASE("quantum potential") {
    // cos θ on the flat strip: |Ψ| = |cos θ|/√π, so Q = 1/(2a²) away from the nodes.
    const Superposition flat({{F(Parity::Even, 1, 0), 1.0}}, SurfaceKind::FlatStrip, ref);
    for (double th : {0.2, 1.0, 2.5, 4.0}) CHECK(quantum_potential(flat, th, 0.7, 1.0) == doctest::Approx(2.0).epsilon(1e-12));

    // Stationary state: E = |∇S|²/2 + Q.
    for (const StationaryState& s : {T(Parity::Even, 2, 1), T(Parity::Even, 3, 2), T(Parity::Odd, 2, 1)}) {
        const Superposition sp({{s, 1.0}}, SurfaceKind::Torus, ref);
        for (double th : {0.3, 1.4, 2.9, 5.0}) {
            const AmplitudeJet jet = evaluate_jet(sp, th, 0.0, 0.0);
            if (jet.density() < 1e-4) continue;
            const PhaseGradient g = gradient_S(jet);
            const MetricDiag md = metric_diag(ref, SurfaceKind::Torus, th);
            const double kinetic = 0.5 * (g.s_t * g.s_t / md.g_tt + g.s_p * g.s_p / md.g_pp);
            CHECK(kinetic + quantum_potential(sp, th, 0.0, 0.0) == doctest::Approx(s.energy).epsilon(1e-9));
        }
    }
}

TEST_CASE("shared azimuthal number decouples phi") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(0.0, 2 * pi);
    for (SurfaceKind kind : {SurfaceKind::Torus, SurfaceKind::FlatStrip}) {
        const Superposition sp = table2_like(kind);
        for (int k = 0; k < 50; ++k) {
            const double th = ang(rng), t = 5.0 * ang(rng);
            const AmplitudeJet a = evaluate_jet(sp, th, 0.0, t);
            if (a.density() < 1e-6) continue;
            const SHessian H = hessian_S(a);
            CHECK(std::abs(H.s_tp) <= 1e-12);
            CHECK(std::abs(H.s_pp) <= 1e-12);
            const AmplitudeJet b = evaluate_jet(sp, th, ang(rng), t);
            const Velocity va = velocity(a, kind, ref, th);
            const Velocity vb = velocity(b, kind, ref, th);
            CHECK(va.theta_dot == doctest::Approx(vb.theta_dot).epsilon(1e-12));
            CHECK(va.phi_dot == doctest::Approx(vb.phi_dot).epsilon(1e-12));
            CHECK(hessian_S(b).s_tt == doctest::Approx(H.s_tt).epsilon(1e-12));
        }
    }
}

TEST_CASE("phase unwrapping") {
    PhaseUnwrapper u;
    CHECK(u(3.0) == 3.0);
    CHECK(u(-3.0) == doctest::Approx(2 * pi - 3.0));
    CHECK(u(-0.5) == doctest::Approx(2 * pi - 0.5));
    u.reset();
    CHECK(u(-0.5) == -0.5);
}
