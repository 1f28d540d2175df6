#include "tsg/run.hpp"

#include "tsg/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace tsg {

namespace {

// Per-cell cumulant contributions sharing one pass: int(n1 F + n2 G),
// int p|w|, gamma int p w^2, and the complementarity residual.
struct StepIntegrals {
    double reaction_mass = 0.0;
    double p_absw = 0.0;
    double dissipation = 0.0;
    double comp_residual = 0.0;
};

StepIntegrals step_integrals(const SimState& state, const DerivedFields& d,
                             const GrowthModel& model, const Grid& grid) {
    StepIntegrals s;
    const std::size_t n = d.n.size();
    for (std::size_t j = 0; j < n; ++j) {
        const Rates r = model.eval_rates(d.p[j]);
        s.reaction_mass += state.n1[j] * r.f + state.n2[j] * r.g;
        const double w = d.w[j];
        s.p_absw += d.p[j] * std::abs(w);
        s.dissipation += d.p[j] * w * w;
        const double bracket = (w - d.reaction[j]) + state.n1[j] * r.f + state.n2[j] * r.g;
        s.comp_residual += d.p[j] * std::abs(bracket);
    }
    const double dx = grid.spacing;
    s.reaction_mass *= dx;
    s.p_absw *= dx;
    s.dissipation *= dx * state.gamma;
    s.comp_residual *= dx;
    return s;
}

} // namespace

RunSummary run_simulation(const RunConfig& cfg, const RunSinks& sinks) {
    const auto wall_start = std::chrono::steady_clock::now();

    const Grid grid = cfg.make_grid();
    const GrowthModel model = cfg.make_model();
    const double T = cfg.t_end;

    // snapshots at the requested times plus the start and the end
    std::vector<double> snap_times = cfg.snapshot_times;
    snap_times.push_back(0.0);
    snap_times.push_back(T);
    std::sort(snap_times.begin(), snap_times.end());
    snap_times.erase(std::unique(snap_times.begin(), snap_times.end()), snap_times.end());

    RunSummary sum;
    sum.final_state = cfg.build_state(grid);
    SimState& state = sum.final_state;
    DerivedFields derived = derive_fields(state, grid, model, cfg.tol);

    sum.initial_mass = integrate(state.n1, grid) + integrate(state.n2, grid);
    const double max_p0 = *std::max_element(derived.p.begin(), derived.p.end());
    sum.pressure_bound_enabled = max_p0 <= model.homeostatic_pressure();
    const bool support_check = cfg.compact_initial_data();

    DiagnosticsRecord cum; // carries the accumulating fields
    double comp_residual_int = 0.0;
    double comp_window = 0.0;

    auto emit_record = [&]() {
        DiagnosticsRecord rec = make_record(state, derived, model, grid, cum);
        rec.clamp_cum = sum.clamp_cum;
        sum.records.push_back(rec);
        if (sinks.on_record)
            sinks.on_record(rec);
        sum.bv_sup = std::max(sum.bv_sup, rec.bv_c1 + rec.bv_c2 + rec.bv_n1 + rec.bv_n2);
        sum.w_minus_sup = std::max(sum.w_minus_sup, rec.w_minus_L1);
        sum.seg_ncc_max = std::max(sum.seg_ncc_max, rec.seg_ncc);
        sum.seg_n1n2_max = std::max(sum.seg_n1n2_max, rec.seg_n1n2);
        if (support_check &&
            (derived.n.front() > cfg.tol.vac_tol || derived.n.back() > cfg.tol.vac_tol))
            throw ConfigError("support reached the boundary cells; increase grid.L");
    };

    auto maybe_snapshot = [&](double t) {
        const auto it = std::lower_bound(snap_times.begin(), snap_times.end(), t - 1e-14);
        if (it != snap_times.end() && std::abs(*it - t) <= 1e-12 && sinks.on_snapshot)
            sinks.on_snapshot(state, derived);
    };

    sum.max_p_overall = max_p0;
    sum.min_n_overall = *std::min_element(derived.n.begin(), derived.n.end());
    emit_record();
    maybe_snapshot(0.0);

    const SchemeConfig scheme_cfg = cfg.scheme_config();
    std::size_t next_snap = 0;
    while (next_snap < snap_times.size() && snap_times[next_snap] <= 0.0)
        ++next_snap;

    while (state.t < T) {
        double dt = stable_dt(state, derived, grid, model, scheme_cfg);
        // land exactly on the next snapshot time or on T
        double target = T;
        if (next_snap < snap_times.size())
            target = std::min(target, snap_times[next_snap]);
        bool lands = false;
        if (target - state.t <= dt * (1.0 + 1e-12)) {
            dt = target - state.t;
            lands = true;
        }

        const StepIntegrals ints = step_integrals(state, derived, model, grid);
        cum.grad_p_L2_cum += dt * estimate_grad_p_sq(derived, grid);
        cum.gamma_p_absw_cum += dt * state.gamma * ints.p_absw;
        cum.dissipation_cum += dt * ints.dissipation;
        if (state.t >= 0.5 * T) {
            comp_residual_int += dt * ints.comp_residual;
            comp_window += dt;
        }
        sum.reaction_ledger += dt * ints.reaction_mass;

        auto [next, rep] = advance(state, derived, grid, model, scheme_cfg, dt);
        state = std::move(next);
        if (lands)
            state.t = target;
        ++sum.steps;

        sum.clamp_cum += rep.clamped_mass;
        if (sum.clamp_cum > 1e-8 * sum.initial_mass)
            throw NumericalError("cumulative clamped mass exceeded 1e-8 of the initial mass");
        sum.max_p_overall = std::max(sum.max_p_overall, rep.max_p);
        sum.min_n_overall = std::min(sum.min_n_overall, rep.min_n);

        derived = derive_fields(state, grid, model, cfg.tol);

        const bool final_step = state.t >= T;
        if (sum.steps % cfg.output_every == 0 || final_step)
            emit_record();
        if (lands && next_snap < snap_times.size() && target == snap_times[next_snap]) {
            maybe_snapshot(target);
            ++next_snap;
        } else if (final_step) {
            maybe_snapshot(T);
        }
    }

    const double final_mass = integrate(state.n1, grid) + integrate(state.n2, grid);
    sum.mass_balance_residual = std::abs(final_mass - sum.initial_mass - sum.reaction_ledger);
    sum.comp_residual_timeavg = comp_window > 0.0 ? comp_residual_int / comp_window : 0.0;
    sum.grad_p_L2_cum_T = cum.grad_p_L2_cum;
    sum.gamma_p_absw_cum_T = cum.gamma_p_absw_cum;
    sum.dissipation_cum_T = cum.dissipation_cum;

    double rate_sup = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < sum.records.size(); ++k) {
        const auto& a = sum.records[k];
        const auto& b = sum.records[k + 1];
        const double dt = b.t - a.t;
        if (dt <= 0.0)
            continue;
        rate_sup = std::max(rate_sup,
                            (b.energy - a.energy + b.dissipation_cum - a.dissipation_cum) / dt);
    }
    sum.energy_rate_sup = rate_sup;

    sum.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    return sum;
}

} // namespace tsg
