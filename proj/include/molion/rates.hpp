#pragma once

// Transition rates between the condensate and the ion's bound levels.
// All rates are angular frequencies in atomic units (divide by the atomic
// time for s^-1).

#include "molion/boundstates.hpp"
#include "molion/condensate.hpp"

namespace molion {

/// Intermediate quantities of one capture-rate evaluation.
struct RateBreakdown {
    double xi;              ///< mu_c / Delta epsilon
    double q0;              ///< momentum of the emitted phonon
    double form_factor_q0;  ///< I(q0)
    double occupation_q0;   ///< thermal phonon occupation at q0
    double w_cap;           ///< capture rate
};

/// xi = 8 pi n a_v^2 a mu / m.
double xi(const Condensate& c, double size, double mu);

/// The same ratio evaluated as mu_c / |epsilon_v|.
double xi_from_energies(const Condensate& c, double size, double mu);

/// sqrt(1 + xi^2) - xi, evaluated without cancellation.
double xi_root_factor(double xi);

/// Phonon momentum matching the level's binding:
/// q0^2 a_v^2 mu / m = sqrt(1 + xi^2) - xi.
double phonon_momentum(const Condensate& c, double size, double mu);

/// Squared condensate-to-level form factor, 8 pi a_v^3 n / (1 + q^2 a_v^2)^2.
double form_factor(const Condensate& c, double size, double q);

/// Phonon-assisted capture into a level of extent `size`, Bose-enhanced by
/// the thermal occupation of the emitted mode.
RateBreakdown capture_rate(const Condensate& c, double size, double mu);
RateBreakdown capture_rate(const Condensate& c, const BoundLevel& level, double mu);
/// Evaluated at the effective size of the mean-field-shifted level.
RateBreakdown capture_rate(const Condensate& c, const ShiftedLevel& level, double mu);

enum class CaptureRegime { binary, phonon };

struct CaptureAsymptote {
    double rate;
    /// False when xi is outside the regime (binary needs xi < 0.1, phonon xi > 10).
    bool regime_consistent;
};

/// Leading-order limit of the capture rate:
///   binary: 4 mu_c (m/mu)^{3/2} xi (1 + m/mu)^-2 (n_q0 + 1)
///   phonon: 4 mu_c (m/mu)^{3/2} (2 xi)^{-3/2} (n_q0 + 1)
CaptureAsymptote capture_asymptote(const Condensate& c, double size, double mu,
                                   CaptureRegime regime);

/// Capture into a level of size a_v relative to the next level down,
/// 1 + (2 mu a_v^2)^{1/4} K4.
double capture_ratio(double size, const Species& species, double mu);

/// Loss from the top level to the one below, modelled as the capture rate
/// into that lower (unshifted, empty) level.
double downward_rate(const Condensate& c, const BoundLevel& level, double mu);

/// Thermal return to the condensate. Zero at T = 0; otherwise
/// W_cap(shifted) * exp(1 - |eps_eff| / kT), equal to W_cap at |eps_eff| = kT.
double upward_rate(const Condensate& c, const ShiftedLevel& shifted, double mu);

/// Two-photon drive: Rabi frequency and pulse duration.
struct LaserDrive {
    double rabi;
    double tau;

    LaserDrive(double rabi, double tau);
};

/// Atoms transferred by a short pulse, 8 pi a_v^3 n Omega^2 tau^2. Throws
/// RegimeError when the result exceeds 10% of `total_atoms`.
double stimulated_number(const LaserDrive& drive, const Condensate& c, double size,
                         double total_atoms);

/// Omega sqrt(8 pi a_v^3 n), so that (W_st tau)^2 equals stimulated_number.
double stimulated_rate(const LaserDrive& drive, const Condensate& c, double size);

/// Heating threshold n^{2/3} / m; stimulated rates should stay well below it.
double heating_limit(const Condensate& c);

}  // namespace molion
