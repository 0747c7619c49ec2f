#pragma once

// Near-threshold levels of the ion's -C4/2r^4 polarization potential.

#include <vector>

#include "molion/condensate.hpp"
#include "molion/units.hpp"

namespace molion {

/// One level of the ladder. `index_below_top` is 0 for the uppermost level.
struct BoundLevel {
    int index_below_top;
    double size;     ///< wavefunction extent a_v
    double epsilon;  ///< binding energy, -1 / (2 mu a_v^2)
};

/// A level whose binding is reduced by the mean field of `occupation` atoms.
struct ShiftedLevel {
    BoundLevel base;
    double occupation;
    double epsilon_eff;
};

/// -1 / (2 mu a^2).
double binding_energy(double size, double mu);

/// Inverse of binding_energy: 1 / sqrt(2 mu |epsilon|). Requires epsilon < 0.
double effective_size(double epsilon, double mu);

/// Uppermost level, sized by the atom-ion scattering length.
BoundLevel top_level(const Species& species, double mu);

/// K4 = 4 sqrt(2 pi / mu) Gamma(5/4) / (Gamma(3/4) C4^{1/4}).
double k4_constant(const Species& species, double mu);

/// (2 mu a_v^2)^{1/4} K4, the LeRoy-Bernstein spacing term at size a_v.
double leroy_bernstein_term(double size, const Species& species, double mu);

/// a_{v-1}^2 = a_v^2 / (1 + (2 mu a_v^2)^{1/4} K4).
BoundLevel next_level_down(const BoundLevel& level, const Species& species, double mu);

/// `depth` levels starting at the top, strictly shrinking.
std::vector<BoundLevel> ladder(const Species& species, double mu, int depth);

/// Occupation below which the mean-field shift is clamped: m a_v / (6 mu a).
double shift_onset(const BoundLevel& level, const Condensate& c, double mu);

/// epsilon_eff = -min(|eps_v|, (m a_v / (6 mu a N))^{2/3} |eps_v|).
ShiftedLevel shifted_binding_energy(const BoundLevel& level, double occupation,
                                    const Condensate& c, double mu);

}  // namespace molion
