#include "tsg/io.hpp"

#include "tsg/errors.hpp"
#include "tsg/version.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

namespace tsg {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string snapshot_path(const std::string& run_dir, double t) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", t);
    return run_dir + "/snapshot_t" + buf + ".csv";
}

void write_snapshot(const SimState& state, const DerivedFields& derived, const Grid& grid,
                    const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write snapshot '" + path + "'");
    out << "x,n1,n2,n,p,c1,c2,w\n";
    for (int j = 0; j < grid.cell_count; ++j) {
        out << format_double(grid.centers[j]) << ',' << format_double(state.n1[j]) << ','
            << format_double(state.n2[j]) << ',' << format_double(derived.n[j]) << ','
            << format_double(derived.p[j]) << ',' << format_double(derived.c1[j]) << ','
            << format_double(derived.c2[j]) << ',' << format_double(derived.w[j]) << '\n';
    }
    if (!out)
        throw IoError("short write on snapshot '" + path + "'");
}

DiagnosticsWriter::DiagnosticsWriter(const std::string& path) : out_(path) {
    if (!out_)
        throw IoError("cannot write diagnostics '" + path + "'");
    const auto& names = DiagnosticsRecord::column_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        out_ << (i ? "," : "") << names[i];
    out_ << '\n';
    out_.flush();
}

void DiagnosticsWriter::write(const DiagnosticsRecord& rec) {
    const auto vals = rec.values();
    for (std::size_t i = 0; i < vals.size(); ++i)
        out_ << (i ? "," : "") << format_double(vals[i]);
    out_ << '\n';
    out_.flush();
    if (!out_)
        throw IoError("short write on diagnostics stream");
}

void write_run_meta(const RunConfig& cfg, const GrowthModel& model, const std::string& run_dir) {
    const std::string path = run_dir + "/run_meta";
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    out << "# resolved configuration\n";
    out << resolved_config_text(cfg);
    out << "# artifact\n";
    out << "version = " << kVersion << "\n";
    out << "homeostatic_pressure = " << format_double(model.homeostatic_pressure()) << "\n";
    out << "reaction_bound = " << format_double(model.reaction_bound()) << "\n";
    const FeasibilityReport rep = model.check_feasibility();
    out << "feasible = " << (rep.feasible() ? "true" : "false") << "\n";
    for (const auto& note : rep.notes)
        out << "# " << note << "\n";
    if (!out)
        throw IoError("short write on '" + path + "'");
}

void emit_plot_script(const std::string& run_dir, const std::vector<double>& snapshot_times) {
    const std::string path = run_dir + "/plots.gp";
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    out << "# gnuplot script: densities and pressure per snapshot\n";
    out << "set style data lines\n";
    out << "set xlabel 'x'\n";
    for (double t : snapshot_times) {
        const std::string snap = std::filesystem::path(snapshot_path(run_dir, t)).filename();
        char title[64];
        std::snprintf(title, sizeof title, "t = %g", t);
        out << "set title '" << title << "'\n";
        out << "plot '" << snap << "' using 1:2 title 'n1' lw 2, \\\n"
            << "     '" << snap << "' using 1:3 title 'n2' lw 2, \\\n"
            << "     '" << snap << "' using 1:5 title 'p' lw 2\n";
        out << "pause -1\n";
    }
    if (!out)
        throw IoError("short write on '" + path + "'");
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec)
        throw IoError("cannot create directory '" + path + "': " + ec.message());
}

} // namespace tsg
