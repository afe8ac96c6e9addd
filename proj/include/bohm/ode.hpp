#pragma once

// Adaptive Dormand–Prince 5(4) integrator with FSAL and the standard
// fourth-order continuous extension (Hairer, Nørsett & Wanner, DOPRI5).
//
// The right-hand side is any callable `void(double t, const State& y, State& dydt)`.
// The integrator is driven one accepted step at a time so callers can sample
// dense output, rescale linear components or stop on their own conditions
// between steps. Exceptions thrown by the right-hand side propagate out of
// step() and leave the integrator at the last accepted point.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bohm::ode {

struct Tolerances {
    double rel = 1e-10;
    double abs = 1e-10;
    /// Leading components that are unwrapped angles. Their error scale is
    /// abs + rel rather than growing with the winding count.
    std::size_t angles = 0;
};

class StepSizeUnderflow : public std::runtime_error {
  public:
    StepSizeUnderflow(double t_, double h_) : std::runtime_error(message(t_, h_)), t(t_), h(h_) {}
    double t;
    double h;

  private:
    static std::string message(double t, double h) {
        std::ostringstream os;
        os << "step size underflow at t=" << t << " (h=" << h << ")";
        return os.str();
    }
};

struct Stats {
    long accepted = 0;
    long rejected = 0;
    long evaluations = 0;
};

template <std::size_t N, class Rhs>
class DormandPrince45 {
  public:
    using State = std::array<double, N>;

    DormandPrince45(Rhs rhs, double t0, const State& y0, Tolerances tol, double max_step = 0.0)
        : rhs_(std::move(rhs)), tol_(tol), max_step_(max_step), t_(t0), t_prev_(t0), y_(y0), y_prev_(y0) {
        if (!(tol.rel > 0.0 && tol.rel < 1.0) || !(tol.abs > 0.0 && tol.abs < 1.0))
            throw std::invalid_argument("integrator tolerances must lie in (0, 1)");
        eval(t_, y_, k1_);
        h_ = initial_step();
    }

    double t() const { return t_; }
    double t_prev() const { return t_prev_; }
    const State& y() const { return y_; }
    const State& dydt() const { return k1_; }
    const Stats& stats() const { return stats_; }
    double step_size() const { return h_; }

    /// Take one accepted step, never passing t_limit. Returns the new time.
    double step(double t_limit) {
        if (t_limit <= t_) return t_;
        bool last_rejected = false;
        for (;;) {
            double h = std::min(h_, t_limit - t_);
            if (max_step_ > 0.0) h = std::min(h, max_step_);
            if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t_)))
                throw StepSizeUnderflow(t_, h);

            attempt(h);
            const double err = error_norm();
            if (err <= 1.0) {
                const double fac = err == 0.0 ? kFacMax : std::clamp(kSafety * std::pow(err, -0.2), kFacMin, kFacMax);
                finish_step(h, h >= t_limit - t_ ? t_limit : t_ + h);
                h_ = last_rejected ? std::min(h, h * fac) : h * fac;
                ++stats_.accepted;
                return t_;
            }
            ++stats_.rejected;
            last_rejected = true;
            h_ = h * std::max(kFacMin, kSafety * std::pow(err, -0.2));
        }
    }

    /// Dense output on [t_prev(), t()].
    State dense(double t) const {
        State out{};
        const double h = t_ - t_prev_;
        if (h == 0.0) return y_;
        const double s = (t - t_prev_) / h;
        const double s1 = 1.0 - s;
        for (std::size_t i = 0; i < N; ++i)
            out[i] = cont_[0][i] + s * (cont_[1][i] + s1 * (cont_[2][i] + s * (cont_[3][i] + s1 * cont_[4][i])));
        return out;
    }

    /// Multiply components [first, first + count) by `factor`, including the
    /// cached derivative. Only valid for components on which the system is
    /// linear and homogeneous.
    void scale_components(std::size_t first, std::size_t count, double factor) {
        for (std::size_t i = first; i < first + count; ++i) {
            y_[i] *= factor;
            k1_[i] *= factor;
        }
    }

  private:
    static constexpr double kSafety = 0.9;
    static constexpr double kFacMin = 0.2;
    static constexpr double kFacMax = 5.0;

    static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                            a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                            a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    void eval(double t, const State& y, State& dydt) {
        ++stats_.evaluations;
        rhs_(t, y, dydt);
    }

    double initial_step() {
        // Hairer's starting-step heuristic.
        double d0 = 0.0, d1n = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = tol_.abs + tol_.rel * std::abs(y_[i]);
            d0 += (y_[i] / sc) * (y_[i] / sc);
            d1n += (k1_[i] / sc) * (k1_[i] / sc);
        }
        d0 = std::sqrt(d0 / N);
        d1n = std::sqrt(d1n / N);
        double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
        if (max_step_ > 0.0) h0 = std::min(h0, max_step_);
        State y1{};
        for (std::size_t i = 0; i < N; ++i) y1[i] = y_[i] + h0 * k1_[i];
        State f1{};
        eval(t_ + h0, y1, f1);
        double d2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = tol_.abs + tol_.rel * std::abs(y_[i]);
            d2 += ((f1[i] - k1_[i]) / sc) * ((f1[i] - k1_[i]) / sc);
        }
        d2 = std::sqrt(d2 / N) / h0;
        const double dmax = std::max(d1n, d2);
        const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
        double h = std::min(100.0 * h0, h1);
        if (max_step_ > 0.0) h = std::min(h, max_step_);
        return h;
    }

    void attempt(double h) {
        State tmp{};
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * a21 * k1_[i];
        eval(t_ + c2 * h, tmp, k2_);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
        eval(t_ + c3 * h, tmp, k3_);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]);
        eval(t_ + c4 * h, tmp, k4_);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y_[i] + h * (a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
        eval(t_ + c5 * h, tmp, k5_);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y_[i] + h * (a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] + a65 * k5_[i]);
        eval(t_ + h, tmp, k6_);
        for (std::size_t i = 0; i < N; ++i)
            y_new_[i] = y_[i] + h * (a71 * k1_[i] + a73 * k3_[i] + a74 * k4_[i] + a75 * k5_[i] + a76 * k6_[i]);
        eval(t_ + h, y_new_, k7_);
        for (std::size_t i = 0; i < N; ++i)
            err_[i] = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] + e6 * k6_[i] + e7 * k7_[i]);
    }

    double error_norm() const {
        double sum = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double mag = i < tol_.angles ? 1.0 : std::max(std::abs(y_[i]), std::abs(y_new_[i]));
            const double sc = tol_.abs + tol_.rel * mag;
            sum += (err_[i] / sc) * (err_[i] / sc);
        }
        const double e = std::sqrt(sum / N);
        return std::isfinite(e) ? e : std::numeric_limits<double>::infinity();
    }

    void finish_step(double h, double t_new) {
        for (std::size_t i = 0; i < N; ++i) {
            const double ydiff = y_new_[i] - y_[i];
            const double bspl = h * k1_[i] - ydiff;
            cont_[0][i] = y_[i];
            cont_[1][i] = ydiff;
            cont_[2][i] = bspl;
            cont_[3][i] = ydiff - h * k7_[i] - bspl;
            cont_[4][i] = h * (d1 * k1_[i] + d3 * k3_[i] + d4 * k4_[i] + d5 * k5_[i] + d6 * k6_[i] + d7 * k7_[i]);
        }
        y_prev_ = y_;
        t_prev_ = t_;
        y_ = y_new_;
        k1_ = k7_;
        t_ = t_new;
    }

    Rhs rhs_;
    Tolerances tol_;
    double max_step_;
    double t_;
    double t_prev_;
    double h_ = 0.0;
    State y_;
    State y_prev_;
    State y_new_{};
    State err_{};
    State k1_{}, k2_{}, k3_{}, k4_{}, k5_{}, k6_{}, k7_{};
    std::array<State, 5> cont_{};
    Stats stats_;
};

} // namespace bohm::ode
