#pragma once

// Brute-force counterparts of the closed-form rate formulas, assembled from
// the dispersion, the bound-state wavefunction and generic numerics only.
// Kept independent of the closed-form rate module.

#include "molion/boundstates.hpp"
#include "molion/condensate.hpp"
#include "molion/numerics/quadrature.hpp"

namespace molion::oracle {

/// Root of dispersion(q) = delta_eps on (0, q_hi], q_hi doubled until the
/// sign changes (at most 64 times).
double q0_root(const Condensate& c, double delta_eps);

/// s-wave bound state (2 pi a_v)^{-1/2} e^{-r/a_v} / r.
double bound_wavefunction(double size, double r);

/// Integral of |psi_v|^2 over all space; 1 for a normalized state.
double wavefunction_norm(double size, const numerics::QuadratureSpec& spec = {});

/// N |<psi_v| e^{-iq.r} |psi_0>|^2 with psi_0 = V^{-1/2}, by radial
/// quadrature of the spherically averaged plane wave.
double form_factor_quadrature(const Condensate& c, double size, double q,
                              const numerics::QuadratureSpec& spec = {});

/// Golden-rule phonon emission integrated over phonon states, with the
/// energy delta resolved through the dispersion root and a central
/// difference for d omega / dq.
double capture_rate_quadrature(const Condensate& c, double size, double mu);

struct ScanResult {
    double occupation;
    bool thermally_unbound;  ///< no crossing in the scan window
};

/// Coarse-to-fine scan of N in [1, 1e7] for |eps_eff(N)| = kT.
ScanResult equilibrium_scan(const Condensate& c, const BoundLevel& level, double mu);

}  // namespace molion::oracle
