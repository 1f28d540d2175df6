#pragma once

#include "tsg/fields.hpp"
#include "tsg/grid.hpp"
#include "tsg/initial_data.hpp"
#include "tsg/model.hpp"
#include "tsg/solver.hpp"

#include <string>
#include <vector>

namespace tsg {

/// Fully resolved run configuration. The on-disk format is a flat
/// `section.key = value` text file; see parse_config.
struct RunConfig {
    // grid
    double half_width = 6.0; // grid.L
    int cells = 400;         // grid.N
    // time
    double t_end = 1.0;      // time.T
    double cfl = 0.9;
    double dt_max = 1e-2;
    int output_every = 100;  // diagnostics cadence, in steps
    std::vector<double> snapshot_times;
    // physics
    double gamma = 5.0;
    double epsilon = 0.0;
    Scheme scheme = Scheme::explicit_upwind;
    // model
    GrowthTerm f1, f2, g1, g2;
    // initial data
    std::vector<ProfileSpec> profiles;
    // tolerances
    Tolerances tol;
    // outputs
    std::string directory = "out";
    bool emit_plots = false;

    Grid make_grid() const { return Grid(half_width, cells); }
    GrowthModel make_model() const { return GrowthModel(f1, f2, g1, g2); }
    SchemeConfig scheme_config() const;
    SimState build_state(const Grid& grid) const;
    bool compact_initial_data() const;
};

/// Parses and validates; throws ConfigError listing every problem with its
/// line number. Unknown keys are errors.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Canonical `key = value` dump of a resolved config (all keys, defaults
/// included); used for run_meta and config round-trips.
std::string resolved_config_text(const RunConfig& cfg);

} // namespace tsg
