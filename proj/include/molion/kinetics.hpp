#pragma once

// Growth of the uppermost-level population,
//   dN/dt = W_cap (N + 1) - (W_down + W_up) N,
// with the level pushed up by the mean field of the trapped atoms.

#include <functional>
#include <vector>

#include "molion/boundstates.hpp"
#include "molion/condensate.hpp"
#include "molion/errors.hpp"

namespace molion {

/// Population and instantaneous rates at time t (atomic units throughout).
struct KineticState {
    double t;
    double occupation;
    double epsilon_eff;
    double xi_eff;
    double w_cap;
    double w_down;
    double w_up;
};

struct EvolveOptions {
    double t_max;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    long max_steps = 1'000'000;
    long record_every = 1;  ///< keep every n-th accepted step
    double initial_occupation = 0.0;
    bool feedback = true;  ///< false freezes the rates at their initial values
};

struct EvolveResult {
    std::vector<KineticState> series;
    double accumulated_error;  ///< sum of local error estimates of accepted steps
    bool stationary;           ///< stopped by stationarity detection
    long steps;
    long rejected;
};

/// Number of consecutive quiet steps that count as stationarity.
inline constexpr int stationary_steps = 10;

/// max_steps ran out; the series integrated so far is kept.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, std::vector<KineticState> partial)
        : Error(what), partial_(std::move(partial)) {}
    const std::vector<KineticState>& partial() const noexcept { return partial_; }

private:
    std::vector<KineticState> partial_;
};

double population_derivative(const KineticState& state);

/// Maps (t, N) to the state with rates evaluated at N.
using RateModel = std::function<KineticState(double t, double occupation)>;

/// Rates of the uppermost level for a given condensate.
class LevelKinetics {
public:
    LevelKinetics(Condensate c, BoundLevel level, double mu);

    /// Rates at occupation N with the mean-field shift applied.
    KineticState state_at(double t, double occupation) const;

    const Condensate& condensate() const noexcept { return c_; }
    const BoundLevel& level() const noexcept { return level_; }
    double mu() const noexcept { return mu_; }
    double w_down() const noexcept { return w_down_; }

private:
    Condensate c_;
    BoundLevel level_;
    double mu_;
    double w_down_;
};

/// Adaptive Dormand-Prince integration of the population equation for an
/// arbitrary rate model. Stops at t_max, or once |dN/dt| < abs_tol * W_cap(0)
/// for `stationary_steps` consecutive accepted steps.
EvolveResult integrate_population(const RateModel& model, const EvolveOptions& opts);

/// Integrates the uppermost level, re-shifting the level and re-evaluating
/// every rate at each stage unless feedback is disabled.
EvolveResult evolve(const Condensate& c, const BoundLevel& level, double mu,
                    const EvolveOptions& opts);

struct EquilibriumResult {
    double occupation;           ///< root of |eps(N)| = kT
    double analytic;             ///< (m a_v / 6 mu a) (|eps_v| / kT)^{3/2}
    bool thermally_unbound;      ///< kT > |eps_v|; occupation is 0
};

/// Occupation at which the shifted binding equals kT. Requires T > 0.
EquilibriumResult equilibrium_population(const Condensate& c, const BoundLevel& level,
                                         double mu);

/// First time the series reaches `fraction` of its final occupation.
double equilibration_time(const std::vector<KineticState>& series, double fraction = 0.95);

struct CurvePoint {
    double xi;
    double w_cap;
};

/// Projection of `evolve` onto the (xi_eff, W_cap) plane. Requires T > 0.
std::vector<CurvePoint> trajectory(const Condensate& c, const BoundLevel& level, double mu,
                                   const EvolveOptions& opts);

enum class SweepSlice {
    density,  ///< xi moved through n at fixed a_v
    size,     ///< xi moved through a_v at fixed n
};

struct SweepResult {
    std::vector<CurvePoint> curve;
    CurvePoint argmax;  ///< golden-section refinement around the best grid point
};

/// `points` values from lo to hi, equally spaced in log.
std::vector<double> log_grid(double lo, double hi, int points);

/// Capture rate along a grid of xi. In the density slice the condensate
/// density is solved from xi at fixed `size`; in the size slice the level
/// size is solved at the template's density.
SweepResult sweep_xi(const Condensate& c_template, double size, double mu,
                     const std::vector<double>& xi_grid, SweepSlice slice = SweepSlice::density);

}  // namespace molion
