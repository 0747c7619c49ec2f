#pragma once

#include "molion/units.hpp"

namespace molion {

/// Homogeneous condensate: species, number density and temperature, all in
/// atomic units (temperature stored as k_B*T).
class Condensate {
public:
    /// n*a^3 above this is reported by `dilute()` as false.
    static constexpr double diluteness_warning = 1e-3;
    /// n*a^3 above this is rejected outright.
    static constexpr double diluteness_limit = 1e-1;

    /// Throws ValidationError for n <= 0 or kT < 0, RegimeError for a <= 0
    /// or n*a^3 > diluteness_limit.
    Condensate(Species species, double density, double kT = 0.0);

    const Species& species() const noexcept { return species_; }
    double density() const noexcept { return density_; }
    double kT() const noexcept { return kT_; }

    /// Gas parameter n*a^3.
    double gas_parameter() const noexcept;
    bool dilute() const noexcept { return gas_parameter() < diluteness_warning; }

    Condensate with_density(double density) const { return {species_, density, kT_}; }
    Condensate with_kT(double kT) const { return {species_, density_, kT}; }

private:
    Species species_;
    double density_;
    double kT_;
};

/// mu_c = 4 pi n a / m.
double chemical_potential(const Condensate& c);

/// s = sqrt(mu_c / m).
double sound_speed(const Condensate& c);

/// Bogoliubov dispersion omega(q) = q s sqrt(1 + (q / 2 m s)^2).
double dispersion(const Condensate& c, double q);

/// d omega / dq, analytic.
double group_velocity(const Condensate& c, double q);

/// Bose-Einstein occupation of the phonon mode q; identically zero at T = 0.
/// The equilibrium distribution at T > 0 is an extension: the capture
/// model itself only ever needs the T -> 0 value.
double phonon_occupation(const Condensate& c, double q);

struct PhononMode {
    double q;
    double omega;
    double occupation;
};

PhononMode phonon_mode(const Condensate& c, double q);

}  // namespace molion
