#include "molion/rates.hpp"

#include <cmath>
#include <sstream>

#include "molion/errors.hpp"

namespace molion {

using constants::pi;

namespace {

void require_size(double size) {
    if (!(size > 0) || !std::isfinite(size)) throw DomainError("level size must be positive");
}

}  // namespace

double xi(const Condensate& c, double size, double mu) {
    require_size(size);
    const Species& s = c.species();
    return 8.0 * pi * c.density() * size * size * s.a * mu / s.mass;
}

double xi_from_energies(const Condensate& c, double size, double mu) {
    return chemical_potential(c) / -binding_energy(size, mu);
}

double xi_root_factor(double x) { return 1.0 / (std::hypot(1.0, x) + x); }

double phonon_momentum(const Condensate& c, double size, double mu) {
    const double mass_ratio = c.species().mass / mu;
    return std::sqrt(xi_root_factor(xi(c, size, mu)) * mass_ratio) / size;
}

double form_factor(const Condensate& c, double size, double q) {
    require_size(size);
    if (!(q >= 0)) throw DomainError("form_factor: q must be non-negative");
    const double qa = q * size;
    const double denom = 1.0 + qa * qa;
    return 8.0 * pi * size * size * size * c.density() / (denom * denom);
}

RateBreakdown capture_rate(const Condensate& c, double size, double mu) {
    const double x = xi(c, size, mu);
    const double root = xi_root_factor(x);
    const double r = c.species().mass / mu;
    const double q0 = std::sqrt(root * r) / size;
    const double occupation = phonon_occupation(c, q0);

    const double shape = x * std::pow(root, 1.5) / std::hypot(1.0, x);
    const double recoil = 1.0 / ((1.0 + r * root) * (1.0 + r * root));
    const double w = 4.0 * chemical_potential(c) * std::pow(r, 1.5) * shape * recoil *
                     (occupation + 1.0);
    return {x, q0, form_factor(c, size, q0), occupation, w};
}

RateBreakdown capture_rate(const Condensate& c, const BoundLevel& level, double mu) {
    return capture_rate(c, level.size, mu);
}

RateBreakdown capture_rate(const Condensate& c, const ShiftedLevel& level, double mu) {
    return capture_rate(c, effective_size(level.epsilon_eff, mu), mu);
}

CaptureAsymptote capture_asymptote(const Condensate& c, double size, double mu,
                                   CaptureRegime regime) {
    const RateBreakdown full = capture_rate(c, size, mu);
    const double r = c.species().mass / mu;
    const double prefactor = 4.0 * chemical_potential(c) * std::pow(r, 1.5) *
                             (full.occupation_q0 + 1.0);
    if (regime == CaptureRegime::binary)
        return {prefactor * full.xi / ((1.0 + r) * (1.0 + r)), full.xi < 0.1};
    return {prefactor * std::pow(2.0 * full.xi, -1.5), full.xi > 10.0};
}

double capture_ratio(double size, const Species& species, double mu) {
    require_size(size);
    return 1.0 + leroy_bernstein_term(size, species, mu);
}

double downward_rate(const Condensate& c, const BoundLevel& level, double mu) {
    if (level.index_below_top != 0)
        throw DomainError("downward_rate: only defined for the uppermost level");
    return capture_rate(c, next_level_down(level, c.species(), mu), mu).w_cap;
}

double upward_rate(const Condensate& c, const ShiftedLevel& shifted, double mu) {
    if (c.kT() == 0) return 0.0;
    const double w_cap = capture_rate(c, shifted, mu).w_cap;
    return w_cap * std::exp(1.0 - std::abs(shifted.epsilon_eff) / c.kT());
}

LaserDrive::LaserDrive(double rabi_, double tau_) : rabi(rabi_), tau(tau_) {
    if (!(rabi >= 0) || !std::isfinite(rabi))
        throw ValidationError("rabi", "must be non-negative");
    if (!(tau > 0) || !std::isfinite(tau)) throw ValidationError("tau", "must be positive");
}

double stimulated_number(const LaserDrive& drive, const Condensate& c, double size,
                         double total_atoms) {
    require_size(size);
    if (!(total_atoms > 0)) throw ValidationError("total_atoms", "must be positive");
    const double transferred = 8.0 * pi * size * size * size * c.density() * drive.rabi *
                               drive.rabi * drive.tau * drive.tau;
    if (transferred > 0.1 * total_atoms) {
        std::ostringstream msg;
        msg << "condensate depletion: N_v/N = " << transferred / total_atoms
            << " exceeds the undepleted limit 0.1";
        throw RegimeError(msg.str());
    }
    return transferred;
}

double stimulated_rate(const LaserDrive& drive, const Condensate& c, double size) {
    require_size(size);
    return drive.rabi * std::sqrt(8.0 * pi * size * size * size * c.density());
}

double heating_limit(const Condensate& c) {
    return std::cbrt(c.density() * c.density()) / c.species().mass;
}

}  // namespace molion
