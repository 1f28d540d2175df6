#pragma once

#include "tsg/fields.hpp"
#include "tsg/grid.hpp"
#include "tsg/model.hpp"

#include <span>
#include <utility>
#include <vector>

namespace tsg {

enum class Scheme { explicit_upwind, semi_implicit };

struct SchemeConfig {
    Scheme scheme = Scheme::explicit_upwind;
    double cfl = 0.9;       // in (0, 1]
    double dt_max = 1e-2;
    double newton_tol = 1e-10;
    int newton_max_iter = 50;
    Tolerances tol{};
};

struct StepReport {
    double dt_used = 0.0;
    double clamped_mass = 0.0; // mass added by clamping species undershoots
    int newton_iters = 0;
    double max_p = 0.0;
    double min_n = 0.0;
};

/// Shift both species by epsilon on the whole domain and reset t to 0.
SimState regularise_initial(std::span<const double> n1_init, std::span<const double> n2_init,
                            double gamma, double epsilon);

/// Stability bound for the next step.
/// Explicit scheme:      cfl dx^2 / (2 gamma max p + 2 dx max|u| + guard)
/// Semi-implicit scheme: min(cfl dx / max|u|, cfl / R_inf)  (diffusion is implicit)
/// Both are capped by dt_max, and dt_max is returned when all wave speeds vanish.
double stable_dt(const SimState& state, const DerivedFields& derived, const Grid& grid,
                 const GrowthModel& model, const SchemeConfig& cfg);

/// Conservative donor-cell upwind step for both species:
///   n_i <- n_i - (dt/dx) d(u n_i_upwind) + dt (n1 F_i(p) + n2 G_i(p)).
/// Fluxes telescope under the zero boundary faces, so the discrete mass
/// identity holds to roundoff.
std::pair<SimState, StepReport> explicit_step(const SimState& state, const Grid& grid,
                                              const GrowthModel& model, const SchemeConfig& cfg,
                                              double dt);

/// Total density solved implicitly in porous-medium form,
///   n* - dt gamma/(gamma+1) d2(n*^{gamma+1}) = n + dt n R,
/// by damped Newton on the tridiagonal Jacobian; fractions advected by upwind
/// with the updated velocity and reconstructed as n_i = c_i n*.
std::pair<SimState, StepReport> semi_implicit_step(const SimState& state, const Grid& grid,
                                                   const GrowthModel& model,
                                                   const SchemeConfig& cfg, double dt);

std::pair<SimState, StepReport> advance(const SimState& state, const Grid& grid,
                                        const GrowthModel& model, const SchemeConfig& cfg,
                                        double dt);

// Variants reusing fields already derived for the current state (the time
// loop derives them anyway for diagnostics).
std::pair<SimState, StepReport> explicit_step(const SimState& state, const DerivedFields& derived,
                                              const Grid& grid, const GrowthModel& model,
                                              const SchemeConfig& cfg, double dt);
std::pair<SimState, StepReport> semi_implicit_step(const SimState& state,
                                                   const DerivedFields& derived, const Grid& grid,
                                                   const GrowthModel& model,
                                                   const SchemeConfig& cfg, double dt);
std::pair<SimState, StepReport> advance(const SimState& state, const DerivedFields& derived,
                                        const Grid& grid, const GrowthModel& model,
                                        const SchemeConfig& cfg, double dt);

} // namespace tsg
