#include <doctest.h>

#include <cmath>
#include <cstring>

#include "molion/kinetics.hpp"
#include "molion/rates.hpp"
#include "support.hpp"

using namespace molion;
using molion::test::rel_err;

namespace {

const Species na = sodium();
const double m = na.mass;

Condensate na_gas(double n_cm3 = 1e14, double t_nK = 0.0) {
    return {na, to_internal(n_cm3, Unit::per_cm3), to_internal(t_nK, Unit::nanokelvin)};
}

double seconds(double s) { return to_internal(s, Unit::second); }

KineticState constant_state(double t, double n, double cap, double down, double up) {
    return {t, n, -1.0, 1.0, cap, down, up};
}

}  // namespace

TEST_CASE("population derivative") {
    CHECK(population_derivative(constant_state(0, 0, 3.0, 1.0, 2.0)) == 3.0);
    CHECK(population_derivative(constant_state(0, 5, 0, 0, 0)) == 0.0);
    // W_cap = W_up, no downward loss: growth continues at W_cap.
    const double n = 1e9;
    CHECK(rel_err(population_derivative(constant_state(0, n, 2.0, 0.0, 2.0)), 2.0) < 1e-15);
}

TEST_CASE("frozen rates follow the linear closed form over five e-folds") {
    const Condensate c = na_gas();
    const BoundLevel top = top_level(na, m);
    const double cap = capture_rate(c, top, m).w_cap;
    const double down = downward_rate(c, top, m);
    const double k = cap - down;

    EvolveOptions opts;
    opts.t_max = 5.0 / k;
    opts.feedback = false;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-12;
    opts.initial_occupation = 3.0;
    const EvolveResult run = evolve(c, top, m, opts);
    REQUIRE(run.series.size() > 10);
    CHECK(run.series.back().t == opts.t_max);

    const double w_bar = cap / k;
    double worst = 0;
    for (const KineticState& s : run.series) {
        const double exact = (opts.initial_occupation + w_bar) * std::exp(k * s.t) - w_bar;
        worst = std::max(worst, rel_err(s.occupation, exact));
        CHECK(s.w_cap == cap);
        CHECK(s.w_down == down);
        CHECK(s.w_up == 0.0);
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("pure decay without capture") {
    const double loss = 2.5;
    const RateModel decay = [&](double t, double n) { return constant_state(t, n, 0.0, 1.0, 1.5); };
    EvolveOptions opts;
    opts.t_max = 4.0;
    opts.initial_occupation = 1000.0;
    opts.rel_tol = 1e-10;
    const EvolveResult run = integrate_population(decay, opts);
    for (const KineticState& s : run.series)
        CHECK(rel_err(s.occupation, 1000.0 * std::exp(-loss * s.t)) < 1e-6);
}

TEST_CASE("population never goes negative") {
    const RateModel stiff = [](double t, double n) { return constant_state(t, n, 0.0, 50.0, 0.0); };
    for (double tol : {1e-2, 1e-4, 1e-8}) {
        EvolveOptions opts;
        opts.t_max = 10.0;
        opts.rel_tol = tol;
        opts.abs_tol = tol;
        opts.initial_occupation = 10.0;
        for (const KineticState& s : integrate_population(stiff, opts).series) CHECK(s.occupation >= 0);
    }
}

TEST_CASE("step-limit truncation keeps the partial series") {
    EvolveOptions opts;
    opts.t_max = seconds(1.0);
    opts.max_steps = 5;
    try {
        evolve(na_gas(1e14, 100.0), top_level(na, m), m, opts);
        FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
        CHECK(e.partial().size() == 6);
        for (std::size_t i = 1; i < e.partial().size(); ++i)
            CHECK(e.partial()[i].t > e.partial()[i - 1].t);
    }
}

TEST_CASE("evolution saturates at the thermal equilibrium population") {
    const Condensate c = na_gas(1e14, 100.0);
    const BoundLevel top = top_level(na, m);
    EvolveOptions opts;
    opts.t_max = seconds(1.0);
    const EvolveResult run = evolve(c, top, m, opts);
    const double n_max = equilibrium_population(c, top, m).occupation;
    CHECK(rel_err(run.series.back().occupation, n_max) < 0.05);

    for (std::size_t i = 1; i < run.series.size(); ++i) {
        CHECK(run.series[i].t > run.series[i - 1].t);
        CHECK(run.series[i].occupation >= 0);
    }
    for (const KineticState& s : run.series) {
        CHECK(rel_err(s.xi_eff, chemical_potential(c) / std::abs(s.epsilon_eff)) < 1e-12);
        CHECK(s.w_cap >= 0);
        CHECK(s.w_up >= 0);
        CHECK(s.w_down >= 0);
    }

    // The stationary point is attracting: dN/dt changes sign across it.
    const LevelKinetics model(c, top, m);
    const double n_star = run.series.back().occupation;
    CHECK(population_derivative(model.state_at(0, 0.9 * n_star)) > 0);
    CHECK(population_derivative(model.state_at(0, 1.1 * n_star)) < 0);
    CHECK(equilibration_time(run.series) > 0);
    CHECK(equilibration_time(run.series) < run.series.back().t);
}

TEST_CASE("stationarity detection stops a relaxing population") {
    // dN/dt = 1 - N relaxes onto N = 1.
    const RateModel relax = [](double t, double n) { return constant_state(t, n, 1.0, 2.0, 0.0); };
    EvolveOptions opts;
    opts.t_max = 1e3;
    // The quiet threshold is abs_tol * W_cap; rel_tol must sit below it or
    // step-controller jitter keeps |dN/dt| above the threshold.
    opts.rel_tol = 1e-10;
    const EvolveResult run = integrate_population(relax, opts);
    CHECK(run.stationary);
    CHECK(run.series.back().t < opts.t_max);
    CHECK(std::abs(run.series.back().occupation - 1.0) < 1e-9);

    // Still growing at t_max: runs to the end.
    opts.t_max = 1.0;
    CHECK_FALSE(integrate_population(relax, opts).stationary);
}

TEST_CASE("tightening the tolerance reduces the error") {
    const Condensate c = na_gas(1e14, 100.0);
    const BoundLevel top = top_level(na, m);
    EvolveOptions opts;
    opts.t_max = seconds(5e-3);  // mid-growth, before saturation
    opts.rel_tol = 1e-12;
    opts.abs_tol = 1e-14;
    const double reference = evolve(c, top, m, opts).series.back().occupation;

    double previous_error = INFINITY, previous_estimate = INFINITY;
    for (double tol : {1e-5, 1e-7, 1e-9}) {
        opts.rel_tol = tol;
        opts.abs_tol = tol;
        const EvolveResult run = evolve(c, top, m, opts);
        const double error = std::abs(run.series.back().occupation - reference);
        CHECK(error < previous_error);
        CHECK(run.accumulated_error < previous_estimate);
        CHECK(error / reference < 1e3 * tol);
        previous_error = error;
        previous_estimate = run.accumulated_error;
    }
}

TEST_CASE("evolution is deterministic") {
    const Condensate c = na_gas(1e14, 100.0);
    EvolveOptions opts;
    opts.t_max = seconds(0.1);
    const EvolveResult a = evolve(c, top_level(na, m), m, opts);
    const EvolveResult b = evolve(c, top_level(na, m), m, opts);
    REQUIRE(a.series.size() == b.series.size());
    CHECK(std::memcmp(a.series.data(), b.series.data(), a.series.size() * sizeof(KineticState)) == 0);
}

TEST_CASE("equilibrium population") {
    const BoundLevel top = top_level(na, m);
    const Condensate c = na_gas(1e14, 100.0);
    const EquilibriumResult eq = equilibrium_population(c, top, m);
    CHECK_FALSE(eq.thermally_unbound);
    CHECK(rel_err(eq.occupation, eq.analytic) < 1e-10);
    // (m a_v / 6 mu a) (|eps_v| / kT)^{3/2}, evaluated independently.
    CHECK(rel_err(eq.occupation, 185.2955526033984) < 1e-9);

    const double mu_eq = 0.5 * m;
    const EquilibriumResult eq_half = equilibrium_population(c, top_level(na, mu_eq), mu_eq);
    CHECK(rel_err(eq_half.occupation, 1048.1899341565731) < 1e-9);

    double previous = 0;
    for (double t_nK : {500.0, 200.0, 100.0, 50.0, 10.0, 1.0}) {
        const double n = equilibrium_population(na_gas(1e14, t_nK), top, m).occupation;
        CHECK(n > previous);
        previous = n;
    }

    const Condensate at_depth(na, c.density(), std::abs(top.epsilon));
    CHECK(rel_err(equilibrium_population(at_depth, top, m).occupation, shift_onset(top, c, m)) < 1e-12);

    const Condensate hot(na, c.density(), 1.01 * std::abs(top.epsilon));
    const EquilibriumResult unbound = equilibrium_population(hot, top, m);
    CHECK(unbound.thermally_unbound);
    CHECK(unbound.occupation == 0.0);

    CHECK_THROWS_AS(equilibrium_population(na_gas(), top, m), DomainError);
}

TEST_CASE("trajectory in the (xi, W_cap) plane") {
    const BoundLevel top = top_level(na, m);
    EvolveOptions opts;
    opts.t_max = seconds(1.0);

    const Condensate warm = na_gas(1e14, 100.0);
    const auto path = trajectory(warm, top, m, opts);
    REQUIRE(path.size() > 2);
    CHECK(rel_err(path.front().xi, xi(warm, 2000.0, m)) < 1e-12);
    // Non-decreasing up to integrator noise once the level has saturated.
    for (std::size_t i = 1; i < path.size(); ++i) CHECK(path[i].xi >= path[i - 1].xi * (1 - 1e-7));
    CHECK(rel_err(path.back().xi, chemical_potential(warm) / warm.kT()) < 0.05);

    // At 10 nK the path crosses the static maximum of W_cap(xi) at fixed
    // density, so W_cap peaks strictly inside the series.
    const Condensate cold = na_gas(1e14, 10.0);
    const auto cold_path = trajectory(cold, top, m, opts);
    const SweepResult sweep = sweep_xi(cold, 2000.0, m, log_grid(1e-2, 1e2, 41), SweepSlice::size);
    REQUIRE(cold_path.front().xi < sweep.argmax.xi);
    REQUIRE(cold_path.back().xi > sweep.argmax.xi);
    std::size_t best = 0;
    for (std::size_t i = 0; i < cold_path.size(); ++i)
        if (cold_path[i].w_cap > cold_path[best].w_cap) best = i;
    CHECK(best > 0);
    CHECK(best + 1 < cold_path.size());

    CHECK_THROWS_AS(trajectory(na_gas(), top, m, opts), DomainError);
}

TEST_CASE("log grid") {
    const auto g = log_grid(1e-3, 1e3, 7);
    REQUIRE(g.size() == 7);
    CHECK(g.front() == 1e-3);
    CHECK(g.back() == 1e3);
    CHECK(rel_err(g[3], 1.0) < 1e-14);
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 5), DomainError);
    CHECK_THROWS_AS(log_grid(1.0, 2.0, 1), DomainError);
}

TEST_CASE("xi sweep: end slopes, single maximum and argmax") {
    const Condensate c = na_gas();
    auto end_slopes = [](const SweepResult& r) {
        const auto& v = r.curve;
        const std::size_t last = v.size() - 1;
        const double first = std::log(v[1].w_cap / v[0].w_cap) / std::log(v[1].xi / v[0].xi);
        const double final = std::log(v[last].w_cap / v[last - 1].w_cap) /
                             std::log(v[last].xi / v[last - 1].xi);
        return std::pair{first, final};
    };
    auto sign_changes = [](const SweepResult& r) {
        int changes = 0;
        for (std::size_t i = 2; i < r.curve.size(); ++i) {
            const bool up_now = r.curve[i].w_cap > r.curve[i - 1].w_cap;
            const bool up_before = r.curve[i - 1].w_cap > r.curve[i - 2].w_cap;
            changes += up_now != up_before;
        }
        return changes;
    };

    // Density slice: mu_c grows with xi, so W ~ xi^2 then xi^{-1/2}.
    const SweepResult dens = sweep_xi(c, 2000.0, m, log_grid(1e-5, 1e3, 81), SweepSlice::density);
    const auto [d_lo, d_hi] = end_slopes(dens);
    CHECK(std::abs(d_lo - 2.0) < 1e-3);
    CHECK(std::abs(d_hi + 0.5) < 1e-2);
    CHECK(sign_changes(dens) == 1);
    // Reference maximum of xi * g(xi) found with 40-digit arithmetic.
    CHECK(rel_err(dens.argmax.xi, 2.6956207695598621) < 1e-6);

    // Size slice: mu_c fixed, so W ~ xi then xi^{-3/2}.
    const SweepResult size = sweep_xi(c, 2000.0, m, log_grid(1e-5, 1e5, 101), SweepSlice::size);
    const auto [s_lo, s_hi] = end_slopes(size);
    CHECK(std::abs(s_lo - 1.0) < 1e-3);
    CHECK(std::abs(s_hi + 1.5) < 1e-3);
    CHECK(sign_changes(size) == 1);
    CHECK(rel_err(size.argmax.xi, 0.86605195404532892) < 1e-6);
    for (const CurvePoint& p : size.curve) CHECK(p.w_cap <= size.argmax.w_cap);

    CHECK_THROWS_AS(sweep_xi(c, 2000.0, m, {1.0, 0.5}), DomainError);
    CHECK_THROWS_AS(sweep_xi(c, 2000.0, m, {}), DomainError);
}
