#include "bohm/monodromy.hpp"
#include "bohm/ode.hpp"
#include "bohm/reference_tables.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace bohm;

namespace {

constexpr double pi = std::numbers::pi;
const TorusShape ref = TorusShape::reference();

StationaryState T(Parity p, int n, int m) { return torus_state(ref, p, n, m); }

Superposition pair(SurfaceKind kind, int n, int m, cplx second = std::sqrt(0.5)) {
    auto st = [&](Parity p) { return kind == SurfaceKind::Torus ? T(p, n, m) : flat_state(n, m, p, ref); };
    return Superposition({{st(Parity::Even), std::sqrt(0.5)}, {st(Parity::Odd), second}}, kind, ref);
}

Superposition mixed() {
    const double w = std::sqrt(1.0 / 3.0);
    return Superposition({{T(Parity::Even, 2, 1), w}, {T(Parity::Even, 3, 2), cplx(0, w)}, {T(Parity::Odd, 3, 2), cplx(0, -w)}},
                         SurfaceKind::Torus, ref);
}

// ∫₀^t tr J carried as a third component next to (θ, φ). tr J spikes to
// ~10^4 near nodes, which defeats fixed-step quadrature on the samples.
double integrated_trace(const Superposition& sp, double theta0, double t_end) {
    auto rhs = [&](double t, const std::array<double, 3>& y, std::array<double, 3>& dy) {
        const AmplitudeJet jet = evaluate_jet(sp, y[0], y[1], t);
        const Velocity v = velocity(jet, sp.kind(), sp.shape(), y[0]);
        dy[0] = v.theta_dot;
        dy[1] = v.phi_dot;
        dy[2] = build_J(hessian_S(jet), sp.kind(), sp.shape(), y[0]).trace();
    };
    ode::DormandPrince45<3, decltype(rhs)> integ(rhs, 0.0, {theta0, 0.0, 0.0}, {1e-14, 1e-14, 2});
    while (integ.t() < t_end) integ.step(t_end);
    return integ.y()[2];
}

} // namespace

TEST_CASE("J scaling on both surfaces") {
    const SHessian h{2.0, 3.0, 5.0};
    const JMatrix t = build_J(h, SurfaceKind::Torus, ref, 0.0);
    CHECK(t.j11 == doctest::Approx(2.0 / 0.25));
    CHECK(t.j12 == doctest::Approx(3.0 / (0.5 * 1.5)));
    CHECK(t.j21 == t.j12);
    CHECK(t.j22 == doctest::Approx(5.0 / 2.25));
    const JMatrix f = build_J(h, SurfaceKind::FlatStrip, TorusShape(2.0, 0.5), 1.0);
    CHECK(f.j12 == doctest::Approx(3.0 / (0.5 * 2.0)));
    CHECK(f.j22 == doctest::Approx(5.0 / 4.0));
}

TEST_CASE("single stationary state: identity monodromy") {
    for (const StationaryState& s : {T(Parity::Even, 3, 2), T(Parity::Odd, 2, 1), T(Parity::Even, 1, 0)}) {
        const Superposition sp({{s, 1.0}}, SurfaceKind::Torus, ref);
        const std::vector<double> cps{1.0, 9.0, 10.0, 100.0};
        const Propagation p = propagate({sp, 0.9, 0.0, 100.0, 1e-10, 1e-10, 1.0}, cps);
        REQUIRE(p.checkpoints.size() == 4);
        for (const auto& m : p.checkpoints) {
            CHECK(m.m[0] == 1.0);
            CHECK(m.m[1] == 0.0);
            CHECK(m.m[2] == 0.0);
            CHECK(m.m[3] == 1.0);
        }
        const LyapunovEstimate est = lyapunov(p.checkpoints, 9.0, 10.0);
        CHECK(est.lambda == 0.0);
        CHECK(est.lambda_t1[0] == 0.0);
        CHECK(est.lambda_t2[1] == 0.0);
    }
}

TEST_CASE("J is symmetric along a trajectory") {
    const Superposition sp = mixed();
    const TrajectoryRecord rec = integrate_trajectory({sp, 1.0, 0.5, 5.0, 1e-10, 1e-10, 0.5});
    for (const auto& s : rec.samples) {
        const JMatrix J = build_J(hessian_S(evaluate_jet(sp, s.theta, s.phi, s.t)), SurfaceKind::Torus, ref, s.theta);
        CHECK(J.j12 == J.j21);
    }
}

TEST_CASE("Abel-Liouville on a mixed-m superposition") {
    const Superposition sp = mixed();
    const std::vector<double> cps{10.0};
    const Propagation p = propagate({sp, 1.25 * pi, 0.0, 10.0, 1e-11, 1e-11, 0.5}, cps);
    REQUIRE(p.checkpoints.size() == 1);
    const double expected = integrated_trace(sp, 1.25 * pi, 10.0);
    CHECK(p.checkpoints[0].log_abs_det() == doctest::Approx(expected).epsilon(1e-6).scale(1.0));
}

TEST_CASE("window identity per branch") {
    const Superposition sp = mixed();
    const std::vector<double> cps{9.0, 9.5, 10.0};
    const Propagation p = propagate({sp, 0.7, 0.0, 10.0}, cps);
    const LyapunovEstimate est = lyapunov(p.checkpoints, 9.0, 10.0);
    for (int i = 0; i < 2; ++i)
        CHECK(std::abs(est.window[i] - (10.0 * est.lambda_t2[i] - 9.0 * est.lambda_t1[i])) <=
              1e-12 * std::max(1.0, std::abs(est.window[i])));
    CHECK(est.times.size() == 3);
}

TEST_CASE("identity applied to printed rows") {
    const auto& t2 = reference_table2();
    const IdentityCheck c0 = check_window_identity(t2.torus, 0);
    CHECK(c0.implied == doctest::Approx(21.92).epsilon(1e-12));
    CHECK(c0.consistent);
    const IdentityCheck c1 = check_window_identity(t2.torus, 1);
    CHECK(c1.implied == doctest::Approx(12.73).epsilon(1e-12));
    CHECK(c1.consistent);
    for (std::size_t k = 0; k < 12; ++k) CHECK(check_window_identity(t2.torus, k).consistent);
    const IdentityCheck odd = check_window_identity(reference_table3().torus, 5);
    CHECK_FALSE(odd.consistent);
    CHECK(odd.implied == doctest::Approx(0.66).epsilon(1e-12));
}

TEST_CASE("eigen-logs") {
    MonodromyState s;
    s.m = {2.0, 0.0, 0.0, 0.5};
    auto logs = eigen_logs(s);
    CHECK(logs[0].real() == doctest::Approx(std::log(2.0)));
    CHECK(logs[1].real() == doctest::Approx(std::log(0.5)));
    s.log2_scale = 10;
    logs = eigen_logs(s);
    CHECK(logs[0].real() == doctest::Approx(11 * std::log(2.0)));
    s.m = {0.0, -1.0, 1.0, 0.0};
    s.log2_scale = 0;
    logs = eigen_logs(s);
    CHECK(logs[0].real() == doctest::Approx(0.0).scale(1.0));
    CHECK(std::abs(logs[0].imag()) == doctest::Approx(pi / 2));
    s.m = {1.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(eigen_logs(s), std::domain_error);
    MonodromyState identity;
    CHECK(eigen_logs(identity)[0] == std::complex<double>(0.0, 0.0));
}

TEST_CASE("lyapunov input checks") {
    MonodromyState a, b;
    a.t = 9.0;
    b.t = 10.0;
    const std::vector<MonodromyState> states{a, b};
    CHECK(lyapunov(states, 9.0, 10.0).lambda == 0.0);
    CHECK_THROWS_AS(lyapunov(states, 8.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(lyapunov(states, 10.0, 9.0), std::invalid_argument);
}

TEST_CASE("checkpoints beyond t_end are rejected") {
    const std::vector<double> cps{11.0};
    CHECK_THROWS_AS(propagate({pair(SurfaceKind::Torus, 3, 2), 0.0, 0.0, 10.0}, cps), std::invalid_argument);
}

TEST_CASE("empty sweep grid") {
    CHECK_THROWS_WITH_AS(table_sweep(pair(SurfaceKind::Torus, 3, 2), std::vector<double>{}), "no theta0 points",
                         std::invalid_argument);
}

TEST_CASE("shared m: M is diagonal with a unit phi entry") {
    const Superposition sp = pair(SurfaceKind::Torus, 3, 2);
    const std::vector<double> cps{9.0, 10.0};
    const Propagation p = propagate({sp, pi / 2, 0.0, 10.0}, cps);
    for (const auto& m : p.checkpoints) {
        CHECK(m.m[1] == 0.0);
        CHECK(std::abs(m.m[2]) < 1e-12);
        CHECK(m.m[3] == 1.0);
    }
}

TEST_CASE("M11 tracks the theta separation of nearby starts") {
    // With S_θφ = 0 the θ equation decouples, so δθ(t)/δθ(0) = M11(t).
    const Superposition sp = pair(SurfaceKind::Torus, 3, 2);
    for (double theta0 : {0.0, pi / 2, pi}) {
        const std::vector<double> cps{5.0, 10.0};
        const Propagation p = propagate({sp, theta0, 0.0, 10.0, 1e-12, 1e-12, 5.0}, cps);
        const double d = 1e-7;
        const TrajectoryRecord a = integrate_trajectory({sp, theta0 - d, 0.0, 10.0, 1e-12, 1e-12, 5.0});
        const TrajectoryRecord b = integrate_trajectory({sp, theta0 + d, 0.0, 10.0, 1e-12, 1e-12, 5.0});
        for (std::size_t k = 0; k < 2; ++k) {
            const double ratio = (b.samples[k + 1].theta - a.samples[k + 1].theta) / (2 * d);
            const auto& m = p.checkpoints[k];
            CHECK(ratio == doctest::Approx(std::ldexp(m.m[0], static_cast<int>(m.log2_scale))).epsilon(1e-4));
        }
    }
}

TEST_CASE("scaled and unscaled monodromy agree") {
    MonodromyState s;
    s.m = {std::ldexp(1.0, 600), 0.0, 0.0, 1.0};
    const auto logs = eigen_logs(s);
    CHECK(logs[0].real() == doctest::Approx(600 * std::log(2.0)));
    MonodromyState scaled;
    scaled.m = {1.0, 0.0, 0.0, std::ldexp(1.0, -600)};
    scaled.log2_scale = 600;
    CHECK(eigen_logs(scaled)[0].real() == doctest::Approx(600 * std::log(2.0)));
    CHECK(eigen_logs(scaled)[1].real() == doctest::Approx(0.0).scale(1.0));
    CHECK(scaled.log_abs_det() == doctest::Approx(s.log_abs_det()));
}

TEST_CASE("sweep rows come back in grid order") {
    const Superposition sp = pair(SurfaceKind::Torus, 1, 0);
    const auto grid = reference_theta0_grid();
    SweepOptions opt;
    opt.jobs = 3;
    const auto rows = table_sweep(sp, grid, opt);
    REQUIRE(rows.size() == 12);
    opt.jobs = 1;
    const auto serial = table_sweep(sp, grid, opt);
    for (std::size_t k = 0; k < 12; ++k) {
        CHECK(rows[k].theta0 == grid[k]);
        CHECK(rows[k].ok);
        CHECK(rows[k].lambda == serial[k].lambda);
        CHECK(rows[k].lambda_t2 == serial[k].lambda_t2);
    }
}
