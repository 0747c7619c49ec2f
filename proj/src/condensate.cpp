#include "molion/condensate.hpp"

#include <cmath>

#include "molion/errors.hpp"

namespace molion {

using constants::pi;

Condensate::Condensate(Species species, double density, double kT)
    : species_(std::move(species)), density_(density), kT_(kT) {
    if (!std::isfinite(density_) || density_ <= 0)
        throw ValidationError("density", "must be positive and finite");
    if (!std::isfinite(kT_) || kT_ < 0)
        throw ValidationError("temperature", "must be non-negative and finite");
    if (species_.a <= 0)
        throw RegimeError("attractive condensates (a <= 0) are not supported");
    if (gas_parameter() > diluteness_limit)
        throw RegimeError("gas parameter n a^3 = " + std::to_string(gas_parameter()) +
                          " exceeds the dilute limit");
}

double Condensate::gas_parameter() const noexcept {
    const double a = species_.a;
    return density_ * a * a * a;
}

double chemical_potential(const Condensate& c) {
    return 4.0 * pi * c.density() * c.species().a / c.species().mass;
}

double sound_speed(const Condensate& c) {
    return std::sqrt(chemical_potential(c) / c.species().mass);
}

double dispersion(const Condensate& c, double q) {
    if (!(q >= 0)) throw DomainError("dispersion: q must be non-negative");
    const double s = sound_speed(c);
    const double x = q / (2.0 * c.species().mass * s);
    return q * s * std::sqrt(1.0 + x * x);
}

double group_velocity(const Condensate& c, double q) {
    if (!(q >= 0)) throw DomainError("group_velocity: q must be non-negative");
    const double s = sound_speed(c);
    const double x = q / (2.0 * c.species().mass * s);
    return s * (1.0 + 2.0 * x * x) / std::sqrt(1.0 + x * x);
}

double phonon_occupation(const Condensate& c, double q) {
    if (c.kT() == 0) return 0.0;
    if (!(q > 0)) throw DomainError("phonon_occupation: divergent at q = 0 for T > 0");
    return 1.0 / std::expm1(dispersion(c, q) / c.kT());
}

PhononMode phonon_mode(const Condensate& c, double q) {
    return {q, dispersion(c, q), phonon_occupation(c, q)};
}

}  // namespace molion
