#include "bohm/ode.hpp"

#include "doctest.h"

#include <cmath>

using namespace bohm::ode;

TEST_CASE("exponential growth") {
    using S = std::array<double, 1>;
    auto rhs = [](double, const S& y, S& dy) { dy[0] = y[0]; };
    DormandPrince45<1, decltype(rhs)> integ(rhs, 0.0, S{1.0}, {1e-12, 1e-12});
    while (integ.t() < 5.0) integ.step(5.0);
    CHECK(integ.t() == 5.0);
    CHECK(integ.y()[0] == doctest::Approx(std::exp(5.0)).epsilon(1e-10));
    CHECK(integ.stats().accepted > 0);
}

TEST_CASE("harmonic oscillator and dense output") {
    using S = std::array<double, 2>;
    auto rhs = [](double, const S& y, S& dy) {
        dy[0] = y[1];
        dy[1] = -y[0];
    };
    DormandPrince45<2, decltype(rhs)> integ(rhs, 0.0, S{1.0, 0.0}, {1e-11, 1e-11});
    double worst = 0.0;
    while (integ.t() < 20.0) {
        integ.step(20.0);
        for (int k = 1; k < 4; ++k) {
            const double t = integ.t_prev() + (integ.t() - integ.t_prev()) * k / 4.0;
            const S y = integ.dense(t);
            worst = std::max(worst, std::abs(y[0] - std::cos(t)) + std::abs(y[1] + std::sin(t)));
        }
    }
    CHECK(integ.t() == 20.0);
    CHECK(std::abs(integ.y()[0] - std::cos(20.0)) < 1e-9);
    CHECK(worst < 1e-8);
    CHECK(integ.dense(integ.t())[0] == integ.y()[0]);
}

TEST_CASE("tolerance controls the error") {
    using S = std::array<double, 2>;
    auto rhs = [](double, const S& y, S& dy) {
        dy[0] = y[1];
        dy[1] = -y[0];
    };
    auto error_at = [&](double tol) {
        DormandPrince45<2, decltype(rhs)> integ(rhs, 0.0, S{1.0, 0.0}, {tol, tol});
        while (integ.t() < 10.0) integ.step(10.0);
        return std::abs(integ.y()[0] - std::cos(10.0));
    };
    CHECK(error_at(1e-10) < error_at(1e-6));
    CHECK(error_at(1e-6) < 1e-4);
}

TEST_CASE("component rescaling keeps the solution consistent") {
    using S = std::array<double, 2>;
    auto rhs = [](double, const S& y, S& dy) {
        dy[0] = y[0];
        dy[1] = 1.0;
    };
    DormandPrince45<2, decltype(rhs)> integ(rhs, 0.0, S{1.0, 0.0}, {1e-12, 1e-12});
    integ.step(1.0);
    const double t = integ.t();
    integ.scale_components(0, 1, 0.5);
    CHECK(integ.y()[0] == doctest::Approx(0.5 * std::exp(t)).epsilon(1e-10));
    while (integ.t() < 2.0) integ.step(2.0);
    CHECK(integ.y()[0] == doctest::Approx(0.5 * std::exp(2.0)).epsilon(1e-9));
    CHECK(integ.y()[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("blow-up ends in step-size underflow") {
    using S = std::array<double, 1>;
    auto rhs = [](double, const S& y, S& dy) { dy[0] = y[0] * y[0]; };
    DormandPrince45<1, decltype(rhs)> integ(rhs, 0.0, S{1.0}, {1e-10, 1e-10});
    CHECK_THROWS_AS(
        [&] {
            for (int k = 0; k < 1000000 && integ.t() < 2.0; ++k) integ.step(2.0);
        }(),
        StepSizeUnderflow);
    CHECK(integ.t() < 1.0);
}

TEST_CASE("invalid tolerances") {
    using S = std::array<double, 1>;
    auto rhs = [](double, const S&, S& dy) { dy[0] = 0.0; };
    CHECK_THROWS_AS((DormandPrince45<1, decltype(rhs)>(rhs, 0.0, S{0.0}, {0.0, 1e-10})), std::invalid_argument);
}
