#include "molion/numerics/special.hpp"

#include <array>
#include <cmath>

#include "molion/errors.hpp"
#include "molion/units.hpp"

namespace molion::numerics {

double gamma(double x) {
    constexpr double g = 7.0;
    static constexpr std::array<double, 9> p{
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    constexpr double pi = constants::pi;

    if (!std::isfinite(x)) throw DomainError("gamma: argument must be finite");
    if (x <= 0 && x == std::floor(x)) throw DomainError("gamma: pole at non-positive integer");
    if (x < 0.5) return pi / (std::sin(pi * x) * gamma(1.0 - x));

    const double z = x - 1.0;
    double sum = p[0];
    for (std::size_t i = 1; i < p.size(); ++i) sum += p[i] / (z + static_cast<double>(i));
    const double t = z + g + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

}  // namespace molion::numerics
