#include "molion/verification.hpp"

#include <algorithm>
#include <cmath>

#include "molion/kinetics.hpp"
#include "molion/oracle.hpp"
#include "molion/rates.hpp"

namespace molion {

namespace {

double rel_dev(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

}  // namespace

std::vector<CheckResult> run_oracle_checks(const Species& species, double mu, double kT) {
    const std::vector<double> densities_cm3 = log_grid(1e12, 1e15, 10);
    const std::vector<double> sizes_a0 = log_grid(500.0, 5000.0, 10);

    CheckResult xi_forms{"xi_two_forms", 0.0, 1e-12};
    CheckResult q0{"q0_closed_form_vs_root", 0.0, 1e-10};
    CheckResult form{"form_factor_vs_quadrature", 0.0, 1e-8};
    CheckResult rate{"capture_rate_vs_golden_rule", 0.0, 1e-6};
    CheckResult norm{"wavefunction_norm", 0.0, 1e-10};

    for (double n_cm3 : densities_cm3) {
        const Condensate c(species, to_internal(n_cm3, Unit::per_cm3));
        for (double size : sizes_a0) {
            xi_forms.max_deviation = std::max(
                xi_forms.max_deviation, rel_dev(xi(c, size, mu), xi_from_energies(c, size, mu)));

            const double closed_q0 = phonon_momentum(c, size, mu);
            q0.max_deviation = std::max(
                q0.max_deviation, rel_dev(closed_q0, oracle::q0_root(c, -binding_energy(size, mu))));

            for (double q : {0.0, 0.3 / size, closed_q0, 3.0 / size}) {
                form.max_deviation =
                    std::max(form.max_deviation,
                             rel_dev(oracle::form_factor_quadrature(c, size, q), form_factor(c, size, q)));
            }

            rate.max_deviation =
                std::max(rate.max_deviation, rel_dev(oracle::capture_rate_quadrature(c, size, mu),
                                                     capture_rate(c, size, mu).w_cap));
        }
    }
    for (double size : sizes_a0)
        norm.max_deviation = std::max(norm.max_deviation, std::abs(oracle::wavefunction_norm(size) - 1.0));

    CheckResult analytic{"equilibrium_bisection_vs_analytic", 0.0, 1e-10};
    CheckResult scan{"equilibrium_solve_vs_scan", 0.0, 1e-3};
    const Condensate warm(species, to_internal(1e14, Unit::per_cm3), kT);
    const BoundLevel top = top_level(species, mu);
    const EquilibriumResult eq = equilibrium_population(warm, top, mu);
    const oracle::ScanResult sc = oracle::equilibrium_scan(warm, top, mu);
    if (eq.thermally_unbound || sc.thermally_unbound) {
        const double flag = eq.thermally_unbound == sc.thermally_unbound ? 0.0 : INFINITY;
        analytic.max_deviation = flag;
        scan.max_deviation = flag;
    } else {
        analytic.max_deviation = rel_dev(eq.occupation, eq.analytic);
        scan.max_deviation = rel_dev(sc.occupation, eq.occupation);
    }

    return {xi_forms, q0, form, rate, norm, analytic, scan};
}

}  // namespace molion
