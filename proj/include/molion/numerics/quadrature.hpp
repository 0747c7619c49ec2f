#pragma once

#include <functional>

namespace molion::numerics {

struct QuadratureSpec {
    double abs_tol = 1e-14;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
};

struct QuadratureResult {
    double value;
    double error;
    int subdivisions;
};

/// Globally adaptive 15-point Gauss-Kronrod on [a, b]. Throws NumericError
/// when the tolerance is not met within `max_subdivisions` bisections.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec = {});

/// Same on [a, inf), through x = a + t/(1-t).
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       const QuadratureSpec& spec = {});

}  // namespace molion::numerics
