#pragma once

#include "tsg/grid.hpp"
#include "tsg/model.hpp"
#include "tsg/solver.hpp"

#include <limits>
#include <vector>

namespace tsg {

/// Source-type self-similar solution of dn/dt = gamma/(gamma+1) d2(n^{gamma+1}),
/// realised by evaluating the standard profile for dn/dt = d2(n^m), m = gamma+1,
/// at the rescaled time gamma/(gamma+1) (t + t0). Mass M for all t.
struct BarenblattSpec {
    double gamma = 2.0;
    double mass = 1.0;
    double t0 = 0.05; // profile offset; avoids the initial Dirac
};

double barenblatt_profile(const BarenblattSpec& spec, double t, double x);

/// Profile sampled at the cell centers.
std::vector<double> barenblatt_field(const BarenblattSpec& spec, double t, const Grid& grid);

/// Half-width of the support at time t.
double barenblatt_support_radius(const BarenblattSpec& spec, double t);

struct OdeTrajectory {
    std::vector<double> times;
    std::vector<double> n1;
    std::vector<double> n2;
};

/// Classical RK4 on the spatially uniform reduction
///   n1' = n1 F1(p) + n2 G1(p),  n2' = n1 F2(p) + n2 G2(p),  p = (n1+n2)^gamma,
/// at fixed dt_ode. Guards against blow-up at 10 P_H^{1/gamma}.
OdeTrajectory uniform_ode_reference(double n1_0, double n2_0, double gamma,
                                    const GrowthModel& model, double T, double dt_ode = 1e-5,
                                    int sample_every = 1000);

struct ConvergenceRow {
    int grid_n = 0;
    double error_l1 = 0.0;
    double observed_order = std::numeric_limits<double>::quiet_NaN();
};

/// L1 errors against the closed-form profile at time T on a sequence of
/// grids, with the observed order between consecutive grids.
std::vector<ConvergenceRow> convergence_study(Scheme scheme, const BarenblattSpec& spec,
                                              const std::vector<int>& grids, double half_width,
                                              double T, double cfl = 0.9, double dt_max = 1e-2);

} // namespace tsg
