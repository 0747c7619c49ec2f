#pragma once

#include <cmath>
#include <utility>

#include "molion/errors.hpp"

namespace molion::numerics {

struct RootOptions {
    double rel_tol = 1e-14;
    double abs_tol = 0.0;
    int max_iterations = 200;
};

/// Brent's method on a bracket [lo, hi] with f(lo), f(hi) of opposite sign.
template <class F>
double brent_root(F&& f, double lo, double hi, const RootOptions& opts = {}) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa > 0) == (fb > 0)) throw NumericError("brent_root: interval does not bracket a root");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * (opts.abs_tol + opts.rel_tol * std::abs(b));
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0) return b;

        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > 0 ? tol : -tol);
        fb = f(b);
    }
    throw NumericError("brent_root: no convergence");
}

/// Plain bisection; slower than Brent but trivially robust.
template <class F>
double bisect_root(F&& f, double lo, double hi, const RootOptions& opts = {}) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo > 0) == (fhi > 0)) throw NumericError("bisect_root: interval does not bracket a root");
    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= opts.abs_tol + opts.rel_tol * std::abs(mid) || mid == lo || mid == hi)
            return mid;
        const double fm = f(mid);
        if (fm == 0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    throw NumericError("bisect_root: no convergence");
}

/// Doubles `hi` until f changes sign on [lo, hi]. Returns the bracket.
template <class F>
std::pair<double, double> expand_bracket_up(F&& f, double lo, double hi, int max_doublings = 64) {
    const bool sign_lo = f(lo) > 0;
    for (int i = 0; i <= max_doublings; ++i) {
        if ((f(hi) > 0) != sign_lo) return {lo, hi};
        lo = hi;
        hi *= 2.0;
    }
    throw NumericError("expand_bracket_up: no sign change after " + std::to_string(max_doublings) +
                       " doublings");
}

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <class F>
double golden_section_max(F&& f, double lo, double hi, double rel_tol = 1e-10) {
    constexpr double inv_phi = 0.6180339887498948482;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int iter = 0; iter < 500; ++iter) {
        if (std::abs(hi - lo) <= rel_tol * (std::abs(x1) + std::abs(x2)) * 0.5) break;
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace molion::numerics
