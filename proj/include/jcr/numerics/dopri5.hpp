#pragma once
/// @file dopri5.hpp
/// @brief Dormand-Prince 5(4) steps with continuous output, for Eigen vectors.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace jcr {

namespace dp5 {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                        d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                        d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
}  // namespace dp5

struct StepTolerance {
    double atol = 1e-10;
    double rtol = 1e-8;
};

/// One attempted step from (t, y0) with derivative k1 already known.
template <class Vec>
struct Dopri5Step {
    double t = 0.0, h = 0.0;
    Vec y0, y1, k7;  ///< k7 = f(t + h, y1), reusable as the next k1
    double error = 0.0;  ///< scaled RMS error estimate; accept when <= 1
    Vec r2, r3, r4, r5;  ///< continuous-output coefficients

    /// Fourth-order interpolant at t + theta h, theta in [0, 1].
    Vec at(double theta) const {
        const double s = 1.0 - theta;
        return y0 + theta * (r2 + s * (r3 + theta * (r4 + s * r5)));
    }
};

template <class Vec, class F>
Dopri5Step<Vec> dopri5_step(F&& f, double t, const Vec& y0, const Vec& k1, double h, const StepTolerance& tol) {
    using namespace dp5;
    const Vec k2 = f(t + c2 * h, (y0 + h * a21 * k1).eval());
    const Vec k3 = f(t + c3 * h, (y0 + h * (a31 * k1 + a32 * k2)).eval());
    const Vec k4 = f(t + c4 * h, (y0 + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
    const Vec k5 = f(t + c5 * h, (y0 + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
    const Vec k6 = f(t + h, (y0 + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).eval());
    Dopri5Step<Vec> s;
    s.t = t;
    s.h = h;
    s.y0 = y0;
    s.y1 = y0 + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    s.k7 = f(t + h, s.y1);
    const Vec err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * s.k7);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = tol.atol + tol.rtol * std::max(std::abs(y0(i)), std::abs(s.y1(i)));
        acc += std::norm(err(i) / sc);
    }
    s.error = err.size() > 0 ? std::sqrt(acc / static_cast<double>(err.size())) : 0.0;
    s.r2 = s.y1 - y0;
    s.r3 = h * k1 - s.r2;
    s.r4 = s.r2 - h * s.k7 - s.r3;
    s.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * s.k7);
    return s;
}

/// Standard step-size update factor for an order-5 pair.
inline double dopri5_factor(double error) {
    if (error == 0.0) return 5.0;
    return std::clamp(0.9 * std::pow(error, -0.2), 0.2, 5.0);
}

/// Integrates y' = f(t, y) adaptively and calls observe(t_k, y(t_k)) at each
/// requested output time, using the continuous extension between steps.
template <class Vec, class F, class Observe>
Vec dopri5_integrate(F&& f, Vec y, double t0, const std::vector<double>& outputs, const StepTolerance& tol,
                     Observe&& observe, double h0 = 0.0, long max_steps = 100000000) {
    double t = t0;
    if (outputs.empty()) return y;
    const double t_end = outputs.back();
    double h = h0 > 0.0 ? h0 : std::max(1e-6, 1e-3 * (t_end - t0));
    Vec k1 = f(t, y);
    std::size_t next = 0;
    while (next < outputs.size() && outputs[next] <= t) observe(outputs[next++], y);
    long steps = 0;
    while (next < outputs.size()) {
        if (++steps > max_steps) throw std::runtime_error("dopri5_integrate: step budget exhausted");
        h = std::min(h, t_end - t);
        auto s = dopri5_step(f, t, y, k1, h, tol);
        if (!(s.error <= 1.0)) {
            h *= std::isfinite(s.error) ? std::max(0.2, 0.9 * std::pow(s.error, -0.2)) : 0.2;
            if (h < 1e-14 * std::max(1.0, std::abs(t))) throw std::runtime_error("dopri5_integrate: step size underflow");
            continue;
        }
        while (next < outputs.size() && outputs[next] <= t + h) {
            observe(outputs[next], s.at((outputs[next] - t) / h));
            ++next;
        }
        t += h;
        y = std::move(s.y1);
        k1 = std::move(s.k7);
        h *= dopri5_factor(s.error);
    }
    return y;
}

}  // namespace jcr
