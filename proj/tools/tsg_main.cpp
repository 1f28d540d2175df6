#include "tsg/config.hpp"
#include "tsg/errors.hpp"
#include "tsg/io.hpp"
#include "tsg/oracles.hpp"
#include "tsg/run.hpp"
#include "tsg/sweep.hpp"
#include "tsg/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

namespace {

// Exit codes: 0 success, 1 config error, 2 infeasible model, 3 numerical
// failure, 4 io failure. Stable across releases.
enum ExitCode { kOk = 0, kConfigError = 1, kInfeasibleModel = 2, kNumericalFailure = 3, kIoFailure = 4 };

int classify(const std::exception& e) {
    if (dynamic_cast<const tsg::ConfigError*>(&e))
        return kConfigError;
    if (dynamic_cast<const tsg::InfeasibleModelError*>(&e))
        return kInfeasibleModel;
    if (dynamic_cast<const tsg::NumericalError*>(&e))
        return kNumericalFailure;
    if (dynamic_cast<const tsg::IoError*>(&e))
        return kIoFailure;
    return kNumericalFailure;
}

struct RunArtifacts {
    std::unique_ptr<tsg::DiagnosticsWriter> diagnostics;
    tsg::RunSinks sinks;
    std::vector<double> snapshot_times_written;
};

// run_meta goes out before the first step so failed runs stay diagnosable.
RunArtifacts prepare_run_dir(const tsg::RunConfig& cfg, const tsg::Grid& grid) {
    RunArtifacts art;
    tsg::ensure_directory(cfg.directory);
    tsg::write_run_meta(cfg, cfg.make_model(), cfg.directory);
    art.diagnostics = std::make_unique<tsg::DiagnosticsWriter>(cfg.directory + "/diagnostics.csv");
    auto* writer = art.diagnostics.get();
    art.sinks.on_record = [writer](const tsg::DiagnosticsRecord& r) { writer->write(r); };
    auto* times = &art.snapshot_times_written;
    const std::string dir = cfg.directory;
    art.sinks.on_snapshot = [times, dir, &grid](const tsg::SimState& s,
                                                const tsg::DerivedFields& d) {
        tsg::write_snapshot(s, d, grid, tsg::snapshot_path(dir, s.t));
        times->push_back(s.t);
    };
    return art;
}

void print_feasibility(const tsg::GrowthModel& model) {
    const tsg::FeasibilityReport rep = model.check_feasibility();
    std::cout << "model: P_H = " << model.homeostatic_pressure()
              << ", R_inf = " << model.reaction_bound() << "\n";
    std::cout << "feasibility: (i) bounded C1 " << (rep.bounded_c1 ? "pass" : "FAIL")
              << ", (ii) monotone " << (rep.monotone ? "pass" : "FAIL")
              << ", (iii) homeostatic pressure " << (rep.homeostatic_exists ? "pass" : "FAIL")
              << ", (iv) F(0) = G(0) " << (rep.balanced_at_zero ? "pass" : "WARN") << "\n";
    for (const auto& n : rep.notes)
        std::cout << "  " << n << "\n";
}

int cmd_run(const std::string& config_path) {
    const tsg::RunConfig cfg = tsg::parse_config_file(config_path);
    const tsg::Grid grid = cfg.make_grid();
    RunArtifacts art = prepare_run_dir(cfg, grid);
    const tsg::RunSummary sum = tsg::run_simulation(cfg, art.sinks);
    if (cfg.emit_plots)
        tsg::emit_plot_script(cfg.directory, art.snapshot_times_written);
    std::cout << "run finished: t = " << sum.final_state.t << ", steps = " << sum.steps
              << ", max p = " << sum.max_p_overall
              << ", mass balance residual = " << sum.mass_balance_residual << "\n"
              << "outputs in " << cfg.directory << "\n";
    return kOk;
}

int cmd_validate(const std::string& config_path) {
    const tsg::RunConfig cfg = tsg::parse_config_file(config_path);
    const tsg::GrowthModel model = cfg.make_model(); // throws on infeasible cross terms
    print_feasibility(model);

    const tsg::Grid grid = cfg.make_grid();
    auto [n1, n2] = tsg::build_initial(cfg.profiles, grid);
    const tsg::WellPreparedReport audit =
        tsg::audit_well_prepared(n1, n2, cfg.gamma, cfg.epsilon, model, grid, cfg.tol.vac_tol);
    std::cout << "initial data: max p(0) = " << audit.max_p0 << " vs P_H = "
              << audit.homeostatic_pressure << (audit.pressure_ok ? " (ok)" : " (exceeds)") << "\n"
              << "  pxx_L1(0) = " << audit.pxx_L1_0 << "\n"
              << "  TV c1 = " << audit.tv_c1_0 << ", TV c2 = " << audit.tv_c2_0
              << ", TV n1 = " << audit.tv_n1_0 << ", TV n2 = " << audit.tv_n2_0 << "\n";
    for (const auto& n : audit.notes)
        std::cout << "  note: " << n << "\n";
    std::cout << "configuration valid\n";
    return kOk;
}

int cmd_sweep(const std::string& config_path, const std::vector<double>& gammas,
              const std::vector<double>& epsilons, int workers, double semi_from) {
    tsg::RunConfig cfg = tsg::parse_config_file(config_path);
    tsg::SweepOptions opts;
    opts.workers = workers;
    opts.semi_implicit_from_gamma = semi_from;
    opts.out_dir = cfg.directory;
    tsg::ensure_directory(cfg.directory);

    const auto rows = tsg::run_gamma_sweep(cfg, gammas, epsilons, opts);
    std::ofstream sweep_csv(cfg.directory + "/sweep.csv");
    if (!sweep_csv)
        throw tsg::IoError("cannot write sweep.csv");
    sweep_csv << tsg::SweepRow::csv_header() << "\n";
    for (const auto& r : rows) {
        sweep_csv << r.csv_line() << "\n";
        if (r.failed)
            std::cout << "row gamma=" << r.gamma << " eps=" << r.epsilon
                      << " FAILED: " << r.failure << "\n";
    }

    const auto verdicts = tsg::decay_report(rows);
    const std::string text = tsg::verdicts_text(verdicts);
    std::ofstream vfile(cfg.directory + "/verdicts.txt");
    if (!vfile)
        throw tsg::IoError("cannot write verdicts.txt");
    vfile << text;
    std::cout << text;
    std::cout << "sweep outputs in " << cfg.directory << "\n";
    return kOk;
}

int cmd_segregation(const std::string& config_path) {
    tsg::RunConfig cfg = tsg::parse_config_file(config_path);
    const tsg::Grid grid = cfg.make_grid();
    RunArtifacts art = prepare_run_dir(cfg, grid);
    const tsg::SegregationResult res = tsg::segregation_study(cfg, art.sinks);
    char line[256];
    std::snprintf(line, sizeof line,
                  "segregation, %s, measured=%.17g, threshold=%.17g\n"
                  "segregation_n1n2, %s, measured=%.17g, threshold=%.17g\n",
                  res.pass ? "PASS" : "FAIL", res.seg_ncc_max, res.threshold,
                  res.seg_n1n2_max <= res.threshold ? "PASS" : "FAIL", res.seg_n1n2_max,
                  res.threshold);
    std::ofstream vfile(cfg.directory + "/verdicts.txt");
    vfile << line;
    std::cout << line;
    return kOk;
}

int cmd_oracle(const std::string& which, const std::string& out_dir) {
    tsg::ensure_directory(out_dir);
    std::ofstream csv(out_dir + "/oracle.csv");
    if (!csv)
        throw tsg::IoError("cannot write oracle.csv");
    csv << "case,grid_N,error_L1,observed_order,pass\n";
    bool all_pass = true;

    auto barenblatt_case = [&](const char* name, tsg::Scheme scheme) {
        tsg::BarenblattSpec spec;
        spec.gamma = 2.0;
        spec.mass = 1.0;
        spec.t0 = 0.05;
        const auto rows = tsg::convergence_study(scheme, spec, {100, 200, 400}, 3.0, 0.5);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const bool pass = i == 0 ? rows[i].error_l1 < 0.2
                                     : rows[i].observed_order >= 0.8 &&
                                           rows[i].error_l1 < rows[i - 1].error_l1;
            all_pass = all_pass && pass;
            csv << name << ',' << rows[i].grid_n << ',' << tsg::format_double(rows[i].error_l1)
                << ',' << tsg::format_double(rows[i].observed_order) << ','
                << (pass ? "true" : "false") << "\n";
            std::cout << name << " N=" << rows[i].grid_n << " errL1=" << rows[i].error_l1
                      << " order=" << rows[i].observed_order << (pass ? " pass" : " FAIL") << "\n";
        }
    };

    auto ode_case = [&]() {
        // two-species uniform reduction vs the PDE step on uniform data
        const tsg::GrowthModel model(tsg::GrowthTerm::affine(1.0, 3.0),
                                     tsg::GrowthTerm::affine_truncated(1.0, 1.0),
                                     tsg::GrowthTerm::affine_truncated(1.0, 1.0),
                                     tsg::GrowthTerm::affine(1.0, 1.0));
        const auto traj = tsg::uniform_ode_reference(0.2, 0.2, 5.0, model, 1.0);

        tsg::RunConfig cfg;
        cfg.half_width = 1.0;
        cfg.cells = 64;
        cfg.t_end = 1.0;
        cfg.dt_max = 1e-5;
        cfg.gamma = 5.0;
        cfg.f1 = tsg::GrowthTerm::affine(1.0, 3.0);
        cfg.f2 = tsg::GrowthTerm::affine_truncated(1.0, 1.0);
        cfg.g1 = tsg::GrowthTerm::affine_truncated(1.0, 1.0);
        cfg.g2 = tsg::GrowthTerm::affine(1.0, 1.0);
        cfg.profiles = {tsg::ProfileSpec::uniform(1, 0.2), tsg::ProfileSpec::uniform(2, 0.2)};
        const tsg::RunSummary sum = tsg::run_simulation(cfg);
        const double dev = std::max(std::abs(sum.final_state.n1[0] - traj.n1.back()),
                                    std::abs(sum.final_state.n2[0] - traj.n2.back()));
        const bool pass = dev <= 1e-4;
        all_pass = all_pass && pass;
        csv << "uniform_ode," << cfg.cells << ',' << tsg::format_double(dev) << ",nan,"
            << (pass ? "true" : "false") << "\n";
        std::cout << "uniform_ode max deviation = " << dev << (pass ? " pass" : " FAIL") << "\n";
    };

    if (which == "all" || which == "barenblatt")
        barenblatt_case("barenblatt_explicit", tsg::Scheme::explicit_upwind);
    if (which == "all" || which == "barenblatt_semi_implicit")
        barenblatt_case("barenblatt_semi_implicit", tsg::Scheme::semi_implicit);
    if (which == "all" || which == "uniform_ode")
        ode_case();

    std::cout << "oracle outputs in " << out_dir << "\n";
    if (!all_pass) {
        std::cerr << "oracle checks failed\n";
        return kNumericalFailure;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-species tissue growth laboratory"};
    app.set_version_flag("--version", tsg::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "run one simulation from a config file");
    run->add_option("config", config_path, "config file")->required();

    std::vector<double> gammas = {5, 10, 20, 40, 80};
    std::vector<double> epsilons = {0.01, 0.0};
    int workers = 1;
    double semi_from = 20.0;
    auto* sweep = app.add_subcommand("sweep", "incompressible-limit study over a gamma grid");
    sweep->add_option("config", config_path, "base config file")->required();
    sweep->add_option("--gammas", gammas, "gamma grid (strictly increasing)")->delimiter(',');
    sweep->add_option("--epsilons", epsilons, "epsilon grid")->delimiter(',');
    sweep->add_option("--workers", workers, "worker pool size");
    sweep->add_option("--semi-implicit-from", semi_from,
                      "switch to the semi-implicit scheme at this gamma");

    auto* seg = app.add_subcommand("segregation", "cross-reaction-free segregation study");
    seg->add_option("config", config_path, "config file")->required();

    std::string oracle_case = "all";
    std::string oracle_dir = "out/oracle";
    auto* oracle = app.add_subcommand("oracle", "scheme validation against closed-form references");
    oracle->add_option("--case", oracle_case,
                       "all | barenblatt | barenblatt_semi_implicit | uniform_ode");
    oracle->add_option("--out", oracle_dir, "output directory");

    auto* validate = app.add_subcommand("validate", "parse, feasibility and initial-data audit");
    validate->add_option("config", config_path, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path);
        if (sweep->parsed())
            return cmd_sweep(config_path, gammas, epsilons, workers, semi_from);
        if (seg->parsed())
            return cmd_segregation(config_path);
        if (oracle->parsed())
            return cmd_oracle(oracle_case, oracle_dir);
        if (validate->parsed())
            return cmd_validate(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify(e);
    }
    return kOk;
}
