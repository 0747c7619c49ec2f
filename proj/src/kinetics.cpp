#include "molion/kinetics.hpp"

#include <algorithm>
#include <cmath>

#include "molion/numerics/ode.hpp"
#include "molion/numerics/roots.hpp"
#include "molion/rates.hpp"

namespace molion {

using constants::pi;

double population_derivative(const KineticState& s) {
    return s.w_cap * (s.occupation + 1.0) - (s.w_down + s.w_up) * s.occupation;
}

LevelKinetics::LevelKinetics(Condensate c, BoundLevel level, double mu)
    : c_(std::move(c)), level_(level), mu_(mu), w_down_(downward_rate(c_, level_, mu_)) {}

KineticState LevelKinetics::state_at(double t, double occupation) const {
    const ShiftedLevel shifted = shifted_binding_energy(level_, std::max(occupation, 0.0), c_, mu_);
    const RateBreakdown cap = capture_rate(c_, shifted, mu_);
    double w_up = 0.0;
    if (c_.kT() > 0) w_up = cap.w_cap * std::exp(1.0 - std::abs(shifted.epsilon_eff) / c_.kT());
    return {t,
            occupation,
            shifted.epsilon_eff,
            chemical_potential(c_) / std::abs(shifted.epsilon_eff),
            cap.w_cap,
            w_down_,
            w_up};
}

EvolveResult integrate_population(const RateModel& model, const EvolveOptions& opts) {
    if (!(opts.t_max > 0)) throw DomainError("evolve: t_max must be positive");
    if (!(opts.rel_tol > 0) || !(opts.abs_tol > 0))
        throw DomainError("evolve: tolerances must be positive");
    if (!(opts.initial_occupation >= 0))
        throw DomainError("evolve: initial occupation must be non-negative");
    if (opts.record_every < 1) throw DomainError("evolve: record_every must be >= 1");

    const KineticState initial = model(0.0, opts.initial_occupation);
    const double quiet_threshold = opts.abs_tol * initial.w_cap;

    EvolveResult result{{initial}, 0.0, false, 0, 0};
    int quiet = 0;
    KineticState last = initial;

    auto rhs = [&model](double t, double n) { return population_derivative(model(t, n)); };
    auto observer = [&](const numerics::OdeStep& step) {
        last = model(step.t, step.y);
        if (step.index % opts.record_every == 0) result.series.push_back(last);
        quiet = std::abs(step.dydt) < quiet_threshold ? quiet + 1 : 0;
        return quiet >= stationary_steps;
    };

    numerics::OdeOptions ode;
    ode.rel_tol = opts.rel_tol;
    ode.abs_tol = opts.abs_tol;
    ode.max_steps = opts.max_steps;
    ode.non_negative = true;

    try {
        const numerics::OdeOutcome out =
            numerics::integrate_dopri45(rhs, 0.0, opts.initial_occupation, opts.t_max, ode, observer);
        result.accumulated_error = out.accumulated_error;
        result.stationary = out.stopped_by_observer;
        result.steps = out.steps;
        result.rejected = out.rejected;
    } catch (const numerics::StepLimitExceeded& e) {
        if (result.series.back().t != last.t) result.series.push_back(last);
        throw TruncationError(e.what(), std::move(result.series));
    }
    if (result.series.back().t != last.t) result.series.push_back(last);
    return result;
}

EvolveResult evolve(const Condensate& c, const BoundLevel& level, double mu,
                    const EvolveOptions& opts) {
    const LevelKinetics kinetics(c, level, mu);
    if (opts.feedback) {
        return integrate_population(
            [&kinetics](double t, double n) { return kinetics.state_at(t, n); }, opts);
    }
    const KineticState frozen = kinetics.state_at(0.0, opts.initial_occupation);
    return integrate_population(
        [frozen](double t, double n) {
            KineticState s = frozen;
            s.t = t;
            s.occupation = n;
            return s;
        },
        opts);
}

EquilibriumResult equilibrium_population(const Condensate& c, const BoundLevel& level, double mu) {
    if (!(c.kT() > 0)) throw DomainError("equilibrium_population: requires T > 0");
    const double depth = std::abs(level.epsilon);
    if (c.kT() > depth) return {0.0, 0.0, true};

    const double onset = shift_onset(level, c, mu);
    const double analytic = onset * std::pow(depth / c.kT(), 1.5);

    auto excess = [&](double n) {
        return std::abs(shifted_binding_energy(level, n, c, mu).epsilon_eff) - c.kT();
    };
    if (excess(onset) == 0) return {onset, analytic, false};
    const auto [lo, hi] = numerics::expand_bracket_up(excess, onset, 2.0 * onset);
    numerics::RootOptions ro;
    ro.rel_tol = 1e-15;
    return {numerics::bisect_root(excess, lo, hi, ro), analytic, false};
}

double equilibration_time(const std::vector<KineticState>& series, double fraction) {
    if (series.empty()) throw DomainError("equilibration_time: empty series");
    const double target = fraction * series.back().occupation;
    for (const KineticState& s : series)
        if (s.occupation >= target) return s.t;
    return series.back().t;
}

std::vector<CurvePoint> trajectory(const Condensate& c, const BoundLevel& level, double mu,
                                   const EvolveOptions& opts) {
    if (!(c.kT() > 0)) throw DomainError("trajectory: requires T > 0");
    const EvolveResult run = evolve(c, level, mu, opts);
    std::vector<CurvePoint> points;
    points.reserve(run.series.size());
    for (const KineticState& s : run.series) points.push_back({s.xi_eff, s.w_cap});
    return points;
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0) || !(hi > lo)) throw DomainError("log_grid: need 0 < lo < hi");
    if (points < 2) throw DomainError("log_grid: need at least two points");
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double step = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
    grid.back() = hi;
    return grid;
}

SweepResult sweep_xi(const Condensate& c_template, double size, double mu,
                     const std::vector<double>& xi_grid, SweepSlice slice) {
    if (xi_grid.empty()) throw DomainError("sweep_xi: empty grid");
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        if (!(xi_grid[i] > 0)) throw DomainError("sweep_xi: grid must be positive");
        if (i > 0 && !(xi_grid[i] > xi_grid[i - 1]))
            throw DomainError("sweep_xi: grid must be strictly increasing");
    }
    const Species& sp = c_template.species();
    // xi = 8 pi n a_v^2 a mu / m, inverted for the swept variable.
    const double coupling = 8.0 * pi * sp.a * mu / sp.mass;

    auto rate_at = [&](double x) {
        if (slice == SweepSlice::density) {
            const Condensate c = c_template.with_density(x / (coupling * size * size));
            return capture_rate(c, size, mu).w_cap;
        }
        const double a_v = std::sqrt(x / (coupling * c_template.density()));
        return capture_rate(c_template, a_v, mu).w_cap;
    };

    SweepResult out;
    out.curve.reserve(xi_grid.size());
    for (double x : xi_grid) out.curve.push_back({x, rate_at(x)});

    const auto best = std::max_element(out.curve.begin(), out.curve.end(),
                                       [](const auto& a, const auto& b) { return a.w_cap < b.w_cap; });
    const std::size_t i = static_cast<std::size_t>(best - out.curve.begin());
    const double lo = std::log(xi_grid[i == 0 ? 0 : i - 1]);
    const double hi = std::log(xi_grid[std::min(i + 1, xi_grid.size() - 1)]);
    if (lo == hi) {
        out.argmax = *best;
        return out;
    }
    const double log_xi =
        numerics::golden_section_max([&](double l) { return rate_at(std::exp(l)); }, lo, hi, 1e-12);
    out.argmax = {std::exp(log_xi), rate_at(std::exp(log_xi))};
    return out;
}

}  // namespace molion
