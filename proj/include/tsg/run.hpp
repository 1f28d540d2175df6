#pragma once

#include "tsg/config.hpp"
#include "tsg/diagnostics.hpp"
#include "tsg/fields.hpp"
#include "tsg/solver.hpp"

#include <functional>
#include <limits>
#include <vector>

namespace tsg {

struct RunSinks {
    std::function<void(const DiagnosticsRecord&)> on_record;
    std::function<void(const SimState&, const DerivedFields&)> on_snapshot;
};

struct RunSummary {
    SimState final_state;
    std::vector<DiagnosticsRecord> records;
    long steps = 0;
    double initial_mass = 0.0;
    double reaction_ledger = 0.0; // sum of dt int(n1 F + n2 G)
    double mass_balance_residual = 0.0;
    double max_p_overall = 0.0;
    double min_n_overall = std::numeric_limits<double>::infinity();
    double comp_residual_timeavg = 0.0; // averaged over [T/2, T]
    double grad_p_L2_cum_T = 0.0;
    double gamma_p_absw_cum_T = 0.0;
    double dissipation_cum_T = 0.0;
    double clamp_cum = 0.0;
    double bv_sup = 0.0;          // sup over records of bv_c1+bv_c2+bv_n1+bv_n2
    double w_minus_sup = 0.0;
    double seg_ncc_max = 0.0;
    double seg_n1n2_max = 0.0;
    double energy_rate_sup = 0.0; // sup over record pairs of (dE + dDcum)/dt
    bool pressure_bound_enabled = false;
    double wall_seconds = 0.0;
};

/// Time loop from 0 to T with dt from stable_dt, diagnostics at the
/// configured cadence, snapshots at the requested times plus t = 0 and t = T.
/// Throws on step failure after flushing everything recorded so far through
/// the sinks.
RunSummary run_simulation(const RunConfig& cfg, const RunSinks& sinks = {});

} // namespace tsg
