#include "tsg/sweep.hpp"

#include "tsg/errors.hpp"
#include "tsg/io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

namespace tsg {

const char* SweepRow::csv_header() {
    return "gamma,epsilon,comp_residual_timeavg,gamma_scaled_residual,sup_w_minus,"
           "grad_p_L2_cum_T,bv_sup,seg_ncc_max,max_p_overall,runtime_seconds";
}

std::string SweepRow::csv_line() const {
    std::ostringstream os;
    os << format_double(gamma) << ',' << format_double(epsilon) << ','
       << format_double(comp_residual_timeavg) << ',' << format_double(gamma_scaled_residual)
       << ',' << format_double(sup_w_minus) << ',' << format_double(grad_p_L2_cum_T) << ','
       << format_double(bv_sup) << ',' << format_double(seg_ncc_max) << ','
       << format_double(max_p_overall) << ',' << format_double(runtime_seconds);
    return os.str();
}

namespace {

std::string row_dir_name(double gamma, double epsilon) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "gamma%g_eps%g", gamma, epsilon);
    return buf;
}

SweepRow run_one_row(const RunConfig& base, double gamma, double epsilon,
                     const SweepOptions& opts) {
    SweepRow row;
    row.gamma = gamma;
    row.epsilon = epsilon;
    RunConfig cfg = base;
    cfg.gamma = gamma;
    cfg.epsilon = epsilon;
    cfg.snapshot_times.clear();
    cfg.emit_plots = false;
    if (gamma >= opts.semi_implicit_from_gamma)
        cfg.scheme = Scheme::semi_implicit;
    try {
        RunSinks sinks;
        std::unique_ptr<DiagnosticsWriter> writer;
        if (!opts.out_dir.empty()) {
            const std::string dir = opts.out_dir + "/" + row_dir_name(gamma, epsilon);
            ensure_directory(dir);
            cfg.directory = dir;
            write_run_meta(cfg, cfg.make_model(), dir);
            writer = std::make_unique<DiagnosticsWriter>(dir + "/diagnostics.csv");
            sinks.on_record = [&writer](const DiagnosticsRecord& r) { writer->write(r); };
        }
        const RunSummary sum = run_simulation(cfg, sinks);
        row.comp_residual_timeavg = sum.comp_residual_timeavg;
        row.gamma_scaled_residual = gamma * sum.comp_residual_timeavg;
        row.sup_w_minus = sum.w_minus_sup;
        row.grad_p_L2_cum_T = sum.grad_p_L2_cum_T;
        row.bv_sup = sum.bv_sup;
        row.seg_ncc_max = sum.seg_ncc_max;
        row.max_p_overall = sum.max_p_overall;
        row.runtime_seconds = sum.wall_seconds;
        row.gamma_p_absw_cum_T = sum.gamma_p_absw_cum_T;
        row.energy_rate_sup = sum.energy_rate_sup;
    } catch (const std::exception& e) {
        row.failed = true;
        row.failure = e.what();
    }
    return row;
}

} // namespace

std::vector<SweepRow> run_gamma_sweep(const RunConfig& base, const std::vector<double>& gammas,
                                      const std::vector<double>& epsilons,
                                      const SweepOptions& opts) {
    for (std::size_t i = 0; i + 1 < gammas.size(); ++i)
        if (gammas[i] >= gammas[i + 1])
            throw ConfigError("gamma list must be strictly increasing");
    for (double g : gammas)
        if (g <= 1.0)
            throw ConfigError("every gamma must exceed 1");
    const std::vector<double> eps_list = epsilons.empty() ? std::vector<double>{0.01, 0.0}
                                                          : epsilons;

    struct Job {
        double gamma, epsilon;
    };
    std::vector<Job> jobs;
    for (double e : eps_list)
        for (double g : gammas)
            jobs.push_back({g, e});

    std::vector<SweepRow> rows(jobs.size());
    const int workers = std::max(1, std::min<int>(opts.workers, static_cast<int>(jobs.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            rows[i] = run_one_row(base, jobs[i].gamma, jobs[i].epsilon, opts);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs.size())
                    return;
                rows[i] = run_one_row(base, jobs[i].gamma, jobs[i].epsilon, opts);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    return rows;
}

namespace {

Verdict ratio_verdict(const std::string& name, const std::vector<double>& values, double reference,
                      double factor) {
    Verdict v;
    v.name = name;
    v.threshold = factor;
    if (reference > 0.0) {
        double worst = 0.0;
        for (double x : values)
            worst = std::max(worst, x / reference);
        v.measured = worst;
        v.pass = worst <= factor;
    } else {
        // reference is non-positive; bounded means staying non-positive too
        double worst = -std::numeric_limits<double>::infinity();
        for (double x : values)
            worst = std::max(worst, x);
        v.measured = worst;
        v.pass = worst <= 0.0;
    }
    return v;
}

} // namespace

std::vector<Verdict> decay_report(const std::vector<SweepRow>& rows) {
    std::map<double, std::vector<SweepRow>> by_eps;
    for (const auto& r : rows)
        if (!r.failed)
            by_eps[r.epsilon].push_back(r);

    bool any_group = false;
    for (auto& [eps, group] : by_eps)
        if (group.size() >= 2)
            any_group = true;
    if (!any_group)
        throw ConfigError("insufficient rows: need at least two successful rows at one epsilon");

    std::vector<Verdict> verdicts;
    const bool multi_eps = by_eps.size() > 1;
    for (auto& [eps, group] : by_eps) {
        if (group.size() < 2)
            continue;
        std::sort(group.begin(), group.end(),
                  [](const SweepRow& a, const SweepRow& b) { return a.gamma < b.gamma; });
        std::string suffix;
        if (multi_eps) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "_eps%g", eps);
            suffix = buf;
        }

        // (a) monotone non-increasing residual up to 5% noise
        Verdict mono;
        mono.name = "monotone_decay" + suffix;
        mono.threshold = 1.05;
        double worst_ratio = 0.0;
        for (std::size_t i = 0; i + 1 < group.size(); ++i) {
            const double prev = group[i].comp_residual_timeavg;
            const double next = group[i + 1].comp_residual_timeavg;
            worst_ratio = std::max(worst_ratio, prev > 0.0 ? next / prev : 0.0);
        }
        mono.measured = worst_ratio;
        mono.pass = worst_ratio <= mono.threshold;
        verdicts.push_back(mono);

        // (b) log-log slope of the residual vs gamma
        Verdict slope;
        slope.name = "loglog_slope" + suffix;
        slope.threshold = -0.7; // engineering target; gamma int int p|w| <= C suggests -1
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (const auto& r : group) {
            const double x = std::log(r.gamma);
            const double y = std::log(std::max(r.comp_residual_timeavg, 1e-300));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double n = static_cast<double>(group.size());
        slope.measured = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        slope.pass = slope.measured <= slope.threshold;
        verdicts.push_back(slope);

        // (c) boundedness relative to the smallest-gamma row
        auto collect = [&](auto field) {
            std::vector<double> v;
            for (const auto& r : group)
                v.push_back(field(r));
            return v;
        };
        const auto& ref = group.front();
        verdicts.push_back(ratio_verdict(
            "gamma_scaled_residual_bounded" + suffix,
            collect([](const SweepRow& r) { return r.gamma_scaled_residual; }),
            ref.gamma_scaled_residual, 5.0));
        verdicts.push_back(ratio_verdict(
            "grad_p_L2_bounded" + suffix,
            collect([](const SweepRow& r) { return r.grad_p_L2_cum_T; }), ref.grad_p_L2_cum_T,
            5.0));
        verdicts.push_back(
            ratio_verdict("bv_bounded" + suffix,
                          collect([](const SweepRow& r) { return r.bv_sup; }), ref.bv_sup, 5.0));
        verdicts.push_back(ratio_verdict(
            "w_minus_bounded" + suffix,
            collect([](const SweepRow& r) { return r.sup_w_minus; }), ref.sup_w_minus, 5.0));
        verdicts.push_back(ratio_verdict(
            "gamma_p_absw_bounded" + suffix,
            collect([](const SweepRow& r) { return r.gamma_p_absw_cum_T; }),
            ref.gamma_p_absw_cum_T, 5.0));
        verdicts.push_back(ratio_verdict(
            "energy_rate_bounded" + suffix,
            collect([](const SweepRow& r) { return r.energy_rate_sup; }), ref.energy_rate_sup,
            5.0));
    }
    return verdicts;
}

std::string verdicts_text(const std::vector<Verdict>& verdicts) {
    std::ostringstream os;
    for (const auto& v : verdicts)
        os << v.name << ", " << (v.pass ? "PASS" : "FAIL") << ", measured="
           << format_double(v.measured) << ", threshold=" << format_double(v.threshold) << "\n";
    return os.str();
}

SegregationResult segregation_study(const RunConfig& cfg, const RunSinks& sinks) {
    if (!cfg.f2.is_zero() || !cfg.g1.is_zero())
        throw ConfigError("segregation study requires zero cross-reaction terms (F2 = G1 = 0)");

    const Grid grid = cfg.make_grid();
    const GrowthModel model = cfg.make_model();
    const SimState init = cfg.build_state(grid);
    const DerivedFields derived = derive_fields(init, grid, model, cfg.tol);
    const auto [ncc0, n1n2_0] = segregation_indicators(init, derived, grid);
    const double mass0 = integrate(init.n1, grid) + integrate(init.n2, grid);
    if (ncc0 > 1e-14 * std::max(mass0, 1.0) || n1n2_0 > 1e-14 * std::max(mass0, 1.0))
        throw ConfigError("segregation study requires initially segregated data (got int n c1 c2 = " +
                          format_double(ncc0) + ")");

    SegregationResult res;
    res.summary = run_simulation(cfg, sinks);
    res.seg_ncc_max = res.summary.seg_ncc_max;
    res.seg_n1n2_max = res.summary.seg_n1n2_max;
    res.threshold = cfg.tol.seg_tol * mass0;
    res.pass = res.seg_ncc_max <= res.threshold && res.seg_n1n2_max <= res.threshold;
    return res;
}

} // namespace tsg
