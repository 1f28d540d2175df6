#pragma once

#include "tsg/config.hpp"
#include "tsg/run.hpp"

#include <string>
#include <vector>

namespace tsg {

/// Per-(gamma, epsilon) summary of one sweep member run.
struct SweepRow {
    double gamma = 0.0;
    double epsilon = 0.0;
    double comp_residual_timeavg = 0.0;
    double gamma_scaled_residual = 0.0;
    double sup_w_minus = 0.0;
    double grad_p_L2_cum_T = 0.0;
    double bv_sup = 0.0;
    double seg_ncc_max = 0.0;
    double max_p_overall = 0.0;
    double runtime_seconds = 0.0;
    // carried for the verdicts, not part of sweep.csv
    double gamma_p_absw_cum_T = 0.0;
    double energy_rate_sup = 0.0;
    bool failed = false;
    std::string failure;

    static const char* csv_header();
    std::string csv_line() const;
};

struct SweepOptions {
    int workers = 1;
    /// Rows at or above this gamma switch to the semi-implicit scheme, which
    /// drops the gamma p diffusion CFL (dt ~ dx instead of dx^2/gamma).
    double semi_implicit_from_gamma = 20.0;
    /// When nonempty, each row writes run_meta + diagnostics.csv into
    /// <out_dir>/gamma<g>_eps<e>/.
    std::string out_dir;
};

/// One row per (gamma, epsilon) pair; identical grid, T and initial data
/// across rows. Rows share nothing and run on a bounded worker pool; a
/// member-run failure marks its row failed and the sweep continues.
std::vector<SweepRow> run_gamma_sweep(const RunConfig& base, const std::vector<double>& gammas,
                                      const std::vector<double>& epsilons,
                                      const SweepOptions& opts = {});

struct Verdict {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
};

/// Decay and boundedness verdicts over the successful rows of one epsilon
/// group: (a) residual monotone non-increasing in gamma within 5% noise,
/// (b) log-log slope <= -0.7, (c) the estimate functionals stay within a
/// factor 5 of their value at the smallest gamma. Throws when fewer than two
/// successful rows share an epsilon.
std::vector<Verdict> decay_report(const std::vector<SweepRow>& rows);

std::string verdicts_text(const std::vector<Verdict>& verdicts);

struct SegregationResult {
    bool pass = false;
    double seg_ncc_max = 0.0;
    double seg_n1n2_max = 0.0;
    double threshold = 0.0;
    RunSummary summary;
};

/// Cross-reaction-free segregation run: requires F2 = G1 = 0 and initially
/// segregated data; passes when both mixing indicators stay below
/// seg_tol x initial mass for the whole run.
SegregationResult segregation_study(const RunConfig& cfg, const RunSinks& sinks = {});

} // namespace tsg
