#pragma once

// Dormand-Prince 5(4) integrator for a single scalar ODE y' = f(t, y).

#include <algorithm>
#include <cmath>

#include "molion/errors.hpp"

namespace molion::numerics {

struct OdeOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double initial_step = 0;  ///< 0 selects a step from the initial slope
    long max_steps = 1'000'000;
    bool non_negative = false;  ///< reject steps that would leave y < 0
};

struct OdeStep {
    double t;
    double y;
    double dydt;
    double local_error;  ///< |y5 - y4| of the accepted step
    long index;
};

struct OdeOutcome {
    double t;
    double y;
    long steps;
    long rejected;
    double accumulated_error;  ///< sum of accepted local error estimates
    bool stopped_by_observer;
};

/// Thrown when `max_steps` accepted steps were taken before `t_end`.
class StepLimitExceeded : public NumericError {
public:
    using NumericError::NumericError;
};

/// Integrates from (t0, y0) to t_end. `observer(const OdeStep&)` runs after
/// every accepted step and may return true to stop early.
template <class Rhs, class Observer>
OdeOutcome integrate_dopri45(Rhs&& f, double t0, double y0, double t_end,
                             const OdeOptions& opts, Observer&& observer) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - b*, the embedded 4th order weights subtracted.
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    if (!(opts.rel_tol > 0) || !(opts.abs_tol > 0))
        throw DomainError("integrate_dopri45: tolerances must be positive");
    if (!(t_end >= t0)) throw DomainError("integrate_dopri45: t_end before t0");

    double t = t0, y = y0;
    double k1 = f(t, y);
    double h = opts.initial_step;
    if (h <= 0) {
        const double scale = opts.abs_tol + opts.rel_tol * std::abs(y);
        h = std::abs(k1) > 0 ? 0.01 * scale / std::abs(k1) : 1e-6 * (t_end - t0);
        h = std::max(h, 1e-12 * (t_end - t0));
    }

    OdeOutcome out{t, y, 0, 0, 0.0, false};
    while (t < t_end) {
        if (out.steps >= opts.max_steps)
            throw StepLimitExceeded("integrate_dopri45: step limit reached at t = " +
                                    std::to_string(t));
        const bool last = t + h >= t_end;
        if (last) h = t_end - t;

        const double k2 = f(t + c2 * h, y + h * a21 * k1);
        const double k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const double k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 =
            f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double k7 = f(t + h, y_new);

        const double err_abs =
            std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
        const double scale =
            opts.abs_tol + opts.rel_tol * std::max(std::abs(y), std::abs(y_new));
        const double err = err_abs / scale;

        const bool negative = opts.non_negative && y_new < 0;
        if (err <= 1.0 && std::isfinite(y_new) && !negative) {
            t = last ? t_end : t + h;
            y = y_new;
            k1 = k7;
            ++out.steps;
            out.accumulated_error += err_abs;
            if (observer(OdeStep{t, y, k1, err_abs, out.steps})) {
                out.stopped_by_observer = true;
                break;
            }
            const double grow = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::clamp(grow, 0.2, 5.0);
        } else {
            ++out.rejected;
            const double shrink =
                std::isfinite(err) && !negative ? 0.9 * std::pow(err, -0.25) : 0.1;
            h *= std::clamp(shrink, 0.1, 0.5);
            if (h <= 1e-15 * std::max(std::abs(t), 1.0))
                throw NumericError("integrate_dopri45: step size underflow");
        }
    }
    out.t = t;
    out.y = y;
    return out;
}

}  // namespace molion::numerics
