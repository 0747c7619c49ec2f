#include "molion/boundstates.hpp"

#include <cmath>

#include "molion/errors.hpp"
#include "molion/numerics/special.hpp"

namespace molion {

using constants::pi;

double binding_energy(double size, double mu) {
    if (!(size > 0)) throw DomainError("binding_energy: size must be positive");
    return -1.0 / (2.0 * mu * size * size);
}

double effective_size(double epsilon, double mu) {
    if (!(epsilon < 0)) throw DomainError("effective_size: binding energy must be negative");
    return 1.0 / std::sqrt(2.0 * mu * -epsilon);
}

BoundLevel top_level(const Species& species, double mu) {
    if (!(species.a_ion > 0)) throw DomainError("top_level: a_ion must be positive");
    return {0, species.a_ion, binding_energy(species.a_ion, mu)};
}

double k4_constant(const Species& species, double mu) {
    if (!(species.c4 > 0) || !(mu > 0)) throw DomainError("k4_constant: C4 and mu must be positive");
    static const double gamma_ratio = numerics::gamma(1.25) / numerics::gamma(0.75);
    return 4.0 * std::sqrt(2.0 * pi / mu) * gamma_ratio / std::pow(species.c4, 0.25);
}

double leroy_bernstein_term(double size, const Species& species, double mu) {
    return std::pow(2.0 * mu * size * size, 0.25) * k4_constant(species, mu);
}

BoundLevel next_level_down(const BoundLevel& level, const Species& species, double mu) {
    const double factor = 1.0 + leroy_bernstein_term(level.size, species, mu);
    const double size = level.size / std::sqrt(factor);
    return {level.index_below_top + 1, size, binding_energy(size, mu)};
}

std::vector<BoundLevel> ladder(const Species& species, double mu, int depth) {
    if (depth < 1) throw DomainError("ladder: depth must be at least 1");
    std::vector<BoundLevel> levels;
    levels.reserve(static_cast<std::size_t>(depth));
    levels.push_back(top_level(species, mu));
    while (static_cast<int>(levels.size()) < depth)
        levels.push_back(next_level_down(levels.back(), species, mu));
    return levels;
}

double shift_onset(const BoundLevel& level, const Condensate& c, double mu) {
    return c.species().mass * level.size / (6.0 * mu * c.species().a);
}

ShiftedLevel shifted_binding_energy(const BoundLevel& level, double occupation,
                                    const Condensate& c, double mu) {
    if (!(occupation >= 0)) throw DomainError("shifted_binding_energy: occupation must be >= 0");
    const double onset = shift_onset(level, c, mu);
    if (occupation <= onset) return {level, occupation, level.epsilon};
    return {level, occupation, std::pow(onset / occupation, 2.0 / 3.0) * level.epsilon};
}

}  // namespace molion
