#pragma once

#include "tsg/fields.hpp"
#include "tsg/grid.hpp"
#include "tsg/model.hpp"

#include <array>
#include <string>
#include <vector>

namespace tsg {

/// One time-stamped row of the estimate ledger. Field order doubles as the
/// CSV column order.
struct DiagnosticsRecord {
    double t = 0.0;
    double mass1 = 0.0;
    double mass2 = 0.0;
    double max_p = 0.0;
    double min_n = 0.0;
    double grad_p_L2_cum = 0.0;     // int_0^t int |dp/dx|^2
    double bv_c1 = 0.0;             // instantaneous total variation
    double bv_c2 = 0.0;
    double bv_n1 = 0.0;
    double bv_n2 = 0.0;
    double gamma_p_absw_cum = 0.0;  // gamma int_0^t int p |w|
    double w_minus_L1 = 0.0;        // int |w|_-
    double px_Linf = 0.0;
    double pxx_L1 = 0.0;
    double energy = 0.0;
    double dissipation_cum = 0.0;   // int_0^t gamma int p w^2
    double comp_residual = 0.0;     // int p |d2p/dx2 + n1 F + n2 G|
    double seg_ncc = 0.0;           // int n c1 c2
    double seg_n1n2 = 0.0;          // int n1 n2
    double clamp_cum = 0.0;

    static const std::array<const char*, 20>& column_names();
    std::array<double, 20> values() const;
};

/// int |dp/dx|^2 via the face velocities (interior faces only).
double estimate_grad_p_sq(const DerivedFields& derived, const Grid& grid);

struct BvEstimates {
    double c1, c2, n1, n2;
};

/// Total variation (sum of interior face jumps) of the fractions and the
/// species densities. The dx of the measure cancels the 1/dx of the
/// difference quotient.
BvEstimates estimate_bv(std::span<const double> n1, std::span<const double> n2,
                        std::span<const double> c1, std::span<const double> c2);

/// (int p |w|, int |w|_-). The caller accumulates the first with weight
/// gamma dt.
std::pair<double, double> estimate_w_pair(const DerivedFields& derived, const Grid& grid);

/// (max over interior faces |dp/dx|, int |d2p/dx2|).
std::pair<double, double> corollary_norms(const DerivedFields& derived, const Grid& grid);

/// Energy E = int (1/2 |dp/dx|^2 - c1 H1(p) - c2 H2(p)) and instantaneous
/// dissipation D = gamma int p w^2.
std::pair<double, double> energy_and_dissipation(const SimState& state,
                                                 const DerivedFields& derived,
                                                 const GrowthModel& model, const Grid& grid);

/// int p |d2p/dx2 + n1 F(p) + n2 G(p)|; densities, not fractions, as in the
/// limit statement.
double complementarity_residual(const SimState& state, const DerivedFields& derived,
                                const GrowthModel& model, const Grid& grid);

/// (int n c1 c2, int n1 n2); the first is the theorem-backed indicator.
std::pair<double, double> segregation_indicators(const SimState& state,
                                                 const DerivedFields& derived, const Grid& grid);

struct BoundsViolation {
    std::string kind;
    int cell = -1;
    double magnitude = 0.0;
};

struct BoundsReport {
    std::vector<BoundsViolation> violations;
    bool clean() const { return violations.empty(); }
    double worst() const;
};

/// Checks n_i >= 0 everywhere, n >= 2 eps e^{-R_inf t} (only when eps > 0)
/// and p <= P_H (only when enabled, i.e. when it held initially).
BoundsReport bounds_check(const SimState& state, const DerivedFields& derived,
                          const GrowthModel& model, const Grid& grid,
                          bool pressure_bound_enabled, double tol_pos = 1e-13,
                          double tol_p = 1e-6);

/// Full record at one instant; cumulative fields are copied from `cum`.
DiagnosticsRecord make_record(const SimState& state, const DerivedFields& derived,
                              const GrowthModel& model, const Grid& grid,
                              const DiagnosticsRecord& cum);

} // namespace tsg
