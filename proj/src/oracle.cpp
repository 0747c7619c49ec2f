#include "molion/oracle.hpp"

#include <cmath>

#include "molion/errors.hpp"
#include "molion/numerics/roots.hpp"

namespace molion::oracle {

using constants::pi;

double q0_root(const Condensate& c, double delta_eps) {
    if (!(delta_eps > 0)) throw DomainError("q0_root: delta_eps must be positive");
    auto mismatch = [&](double q) { return dispersion(c, q) - delta_eps; };
    // Start below the smaller of the phonon and free-particle estimates.
    const double m = c.species().mass;
    const double guess = std::min(delta_eps / sound_speed(c), std::sqrt(2.0 * m * delta_eps));
    double lo = 0.0, hi = guess;
    int doublings = 0;
    while (mismatch(hi) < 0) {
        if (++doublings > 64) throw NumericError("q0_root: no bracket after 64 doublings");
        lo = hi;
        hi *= 2.0;
    }
    numerics::RootOptions ro;
    ro.rel_tol = 1e-15;
    return numerics::brent_root(mismatch, lo, hi, ro);
}

double bound_wavefunction(double size, double r) {
    return std::exp(-r / size) / (r * std::sqrt(2.0 * pi * size));
}

double wavefunction_norm(double size, const numerics::QuadratureSpec& spec) {
    auto density = [size](double r) {
        if (r == 0) return 1.0 / (2.0 * pi * size) * 4.0 * pi;
        const double psi = bound_wavefunction(size, r);
        return 4.0 * pi * r * r * psi * psi;
    };
    return numerics::integrate_to_infinity(density, 0.0, spec).value;
}

double form_factor_quadrature(const Condensate& c, double size, double q,
                              const numerics::QuadratureSpec& spec) {
    if (!(q >= 0)) throw DomainError("form_factor_quadrature: q must be non-negative");
    // Overlap per unit V^{-1/2}: 4 pi int r^2 psi_v(r) j0(qr) dr, integrated in
    // units of a_v so the integrand is O(1).
    auto integrand = [&](double x) {
        const double r = x * size;
        const double j0 = q * r == 0 ? 1.0 : std::sin(q * r) / (q * r);
        const double r_psi = std::exp(-x) / std::sqrt(2.0 * pi * size);  // r * psi_v
        return 4.0 * pi * r * r_psi * j0 * size;
    };
    const double overlap = numerics::integrate_to_infinity(integrand, 0.0, spec).value;
    // |<psi_v|e^{-iqr}|psi_0>|^2 = overlap^2 / V and N = n V.
    return c.density() * overlap * overlap;
}

double capture_rate_quadrature(const Condensate& c, double size, double mu) {
    const double m = c.species().mass;
    const double n = c.density();
    const double mu_c = chemical_potential(c);
    const double delta_eps = 1.0 / (2.0 * mu * size * size);

    const double q0 = q0_root(c, delta_eps);
    const double h = 1e-6 * q0;
    const double slope = (dispersion(c, q0 + h) - dispersion(c, q0 - h)) / (2.0 * h);
    const double occupation = phonon_occupation(c, q0);
    const double form = form_factor_quadrature(c, size, q0);

    // w_emis without the delta, with the volume factored out: V cancels
    // against the V / (2 pi)^3 density of phonon states.
    const double emission = 2.0 * pi * (mu_c * mu_c / n) * (q0 * q0 / (2.0 * m)) *
                            (occupation + 1.0) / dispersion(c, q0) * form;
    // int d^3q delta(delta_eps - omega(q)) f(q) = 4 pi q0^2 f(q0) / |d omega/dq|.
    return 4.0 * pi * q0 * q0 / std::abs(slope) * emission / std::pow(2.0 * pi, 3);
}

ScanResult equilibrium_scan(const Condensate& c, const BoundLevel& level, double mu) {
    if (!(c.kT() > 0)) throw DomainError("equilibrium_scan: requires T > 0");
    auto above = [&](double n) {
        return std::abs(shifted_binding_energy(level, n, c, mu).epsilon_eff) > c.kT();
    };
    constexpr double n_min = 1.0, n_max = 1e7;
    if (!above(n_min)) return {0.0, true};
    if (above(n_max)) return {0.0, true};

    // Coarse pass: 100 points per decade in log N.
    constexpr int per_decade = 100;
    const int points = 7 * per_decade;
    double lo = n_min, hi = n_max;
    for (int i = 1; i <= points; ++i) {
        const double n = n_min * std::pow(10.0, static_cast<double>(i) / per_decade);
        if (!above(n)) {
            hi = n;
            lo = n_min * std::pow(10.0, static_cast<double>(i - 1) / per_decade);
            break;
        }
    }
    // Fine passes: subdivide the bracketing cell tenfold until it is narrow.
    while ((hi - lo) > 1e-12 * hi) {
        const double width = (hi - lo) / 10.0;
        double next_lo = lo;
        for (int k = 1; k <= 10; ++k) {
            const double n = lo + width * k;
            if (!above(n)) {
                hi = n;
                break;
            }
            next_lo = n;
        }
        lo = next_lo;
    }
    return {0.5 * (lo + hi), false};
}

}  // namespace molion::oracle
