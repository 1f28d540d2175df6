#pragma once

#include "tsg/config.hpp"
#include "tsg/diagnostics.hpp"
#include "tsg/fields.hpp"
#include "tsg/grid.hpp"

#include <fstream>
#include <string>
#include <vector>

namespace tsg {

/// %.17g — lossless round-trip of binary64.
std::string format_double(double v);

/// CSV with header x,n1,n2,n,p,c1,c2,w, one row per cell.
void write_snapshot(const SimState& state, const DerivedFields& derived, const Grid& grid,
                    const std::string& path);

/// Canonical snapshot filename for time t inside run_dir.
std::string snapshot_path(const std::string& run_dir, double t);

/// Streaming diagnostics.csv writer; flushes after every row so partial
/// output survives an aborted run.
class DiagnosticsWriter {
public:
    explicit DiagnosticsWriter(const std::string& path);
    void write(const DiagnosticsRecord& rec);

private:
    std::ofstream out_;
};

/// Resolved config + artifact version + feasibility notes, written before
/// the first step.
void write_run_meta(const RunConfig& cfg, const GrowthModel& model, const std::string& run_dir);

/// Gnuplot script drawing n1, n2 and p for every snapshot present in run_dir.
void emit_plot_script(const std::string& run_dir, const std::vector<double>& snapshot_times);

void ensure_directory(const std::string& path);

} // namespace tsg
