#pragma once

#include <string>
#include <vector>

#include "molion/units.hpp"

namespace molion {

/// One closed-form-versus-oracle comparison.
struct CheckResult {
    std::string name;
    double max_deviation;  ///< largest relative deviation seen
    double tolerance;
    bool passed() const noexcept { return max_deviation <= tolerance; }
};

/// Runs every oracle comparison for `species` at reduced mass `mu`:
/// q0 root, form-factor quadrature, golden-rule rate on a 10x10 (n, a_v)
/// grid, wavefunction norm, and the equilibrium solve at temperature kT.
std::vector<CheckResult> run_oracle_checks(const Species& species, double mu, double kT);

}  // namespace molion
