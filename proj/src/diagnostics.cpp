#include "tsg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tsg {

const std::array<const char*, 20>& DiagnosticsRecord::column_names() {
    static const std::array<const char*, 20> names = {
        "t",        "mass1",           "mass2",       "max_p",   "min_n",
        "grad_p_L2_cum", "bv_c1",      "bv_c2",       "bv_n1",   "bv_n2",
        "gamma_p_absw_cum", "w_minus_L1", "px_Linf",  "pxx_L1",  "energy",
        "dissipation_cum", "comp_residual", "seg_ncc", "seg_n1n2", "clamp_cum"};
    return names;
}

std::array<double, 20> DiagnosticsRecord::values() const {
    return {t,     mass1, mass2, max_p, min_n, grad_p_L2_cum, bv_c1, bv_c2,
            bv_n1, bv_n2, gamma_p_absw_cum, w_minus_L1, px_Linf, pxx_L1, energy,
            dissipation_cum, comp_residual, seg_ncc, seg_n1n2, clamp_cum};
}

double estimate_grad_p_sq(const DerivedFields& derived, const Grid& grid) {
    double sum = 0.0;
    for (int f = 1; f < grid.cell_count; ++f)
        sum += derived.velocity[f] * derived.velocity[f];
    return grid.spacing * sum;
}

BvEstimates estimate_bv(std::span<const double> n1, std::span<const double> n2,
                        std::span<const double> c1, std::span<const double> c2) {
    BvEstimates bv{0.0, 0.0, 0.0, 0.0};
    for (std::size_t j = 0; j + 1 < n1.size(); ++j) {
        bv.c1 += std::abs(c1[j + 1] - c1[j]);
        bv.c2 += std::abs(c2[j + 1] - c2[j]);
        bv.n1 += std::abs(n1[j + 1] - n1[j]);
        bv.n2 += std::abs(n2[j + 1] - n2[j]);
    }
    return bv;
}

std::pair<double, double> estimate_w_pair(const DerivedFields& derived, const Grid& grid) {
    double p_absw = 0.0, w_minus = 0.0;
    for (std::size_t j = 0; j < derived.w.size(); ++j) {
        p_absw += derived.p[j] * std::abs(derived.w[j]);
        w_minus += std::max(-derived.w[j], 0.0);
    }
    return {grid.spacing * p_absw, grid.spacing * w_minus};
}

std::pair<double, double> corollary_norms(const DerivedFields& derived, const Grid& grid) {
    double px_linf = 0.0;
    for (int f = 1; f < grid.cell_count; ++f)
        px_linf = std::max(px_linf, std::abs(derived.velocity[f]));
    std::vector<double> pxx = second_difference(derived.p, grid);
    double l1 = 0.0;
    for (double v : pxx)
        l1 += std::abs(v);
    return {px_linf, grid.spacing * l1};
}

std::pair<double, double> energy_and_dissipation(const SimState& state,
                                                 const DerivedFields& derived,
                                                 const GrowthModel& model, const Grid& grid) {
    double grad_part = 0.5 * estimate_grad_p_sq(derived, grid);
    double potential = 0.0;
    double dissipation = 0.0;
    for (std::size_t j = 0; j < derived.p.size(); ++j) {
        auto [h1, h2] = model.antiderivatives(derived.p[j]);
        potential += derived.c1[j] * h1 + derived.c2[j] * h2;
        dissipation += derived.p[j] * derived.w[j] * derived.w[j];
    }
    const double energy = grad_part - grid.spacing * potential;
    return {energy, state.gamma * grid.spacing * dissipation};
}

double complementarity_residual(const SimState& state, const DerivedFields& derived,
                                const GrowthModel& model, const Grid& grid) {
    std::vector<double> pxx = second_difference(derived.p, grid);
    double sum = 0.0;
    for (std::size_t j = 0; j < derived.p.size(); ++j) {
        const Rates r = model.eval_rates(derived.p[j]);
        const double bracket = pxx[j] + state.n1[j] * r.f + state.n2[j] * r.g;
        sum += derived.p[j] * std::abs(bracket);
    }
    return grid.spacing * sum;
}

std::pair<double, double> segregation_indicators(const SimState& state,
                                                 const DerivedFields& derived, const Grid& grid) {
    double ncc = 0.0, n1n2 = 0.0;
    for (std::size_t j = 0; j < derived.n.size(); ++j) {
        ncc += derived.n[j] * derived.c1[j] * derived.c2[j];
        n1n2 += state.n1[j] * state.n2[j];
    }
    return {grid.spacing * ncc, grid.spacing * n1n2};
}

double BoundsReport::worst() const {
    double w = 0.0;
    for (const auto& v : violations)
        w = std::max(w, v.magnitude);
    return w;
}

BoundsReport bounds_check(const SimState& state, const DerivedFields& derived,
                          const GrowthModel& model, const Grid& grid, bool pressure_bound_enabled,
                          double tol_pos, double tol_p) {
    BoundsReport rep;
    const int n = grid.cell_count;

    double worst_neg = 0.0;
    int neg_cell = -1;
    for (int j = 0; j < n; ++j) {
        const double neg = std::max(-state.n1[j], -state.n2[j]);
        if (neg > worst_neg) {
            worst_neg = neg;
            neg_cell = j;
        }
    }
    if (worst_neg > tol_pos)
        rep.violations.push_back({"nonnegativity", neg_cell, worst_neg});

    if (state.epsilon > 0.0) {
        const double barrier =
            2.0 * state.epsilon * std::exp(-model.reaction_bound() * state.t);
        double worst = 0.0;
        int cell = -1;
        for (int j = 0; j < n; ++j) {
            const double deficit = barrier - derived.n[j];
            if (deficit > worst) {
                worst = deficit;
                cell = j;
            }
        }
        if (worst > tol_pos)
            rep.violations.push_back({"lower_barrier", cell, worst});
    }

    if (pressure_bound_enabled) {
        const double ph = model.homeostatic_pressure();
        double worst = 0.0;
        int cell = -1;
        for (int j = 0; j < n; ++j) {
            const double excess = derived.p[j] - ph;
            if (excess > worst) {
                worst = excess;
                cell = j;
            }
        }
        if (worst > tol_p)
            rep.violations.push_back({"pressure_bound", cell, worst});
    }
    return rep;
}

DiagnosticsRecord make_record(const SimState& state, const DerivedFields& derived,
                              const GrowthModel& model, const Grid& grid,
                              const DiagnosticsRecord& cum) {
    DiagnosticsRecord r = cum;
    r.t = state.t;
    r.mass1 = integrate(state.n1, grid);
    r.mass2 = integrate(state.n2, grid);
    r.max_p = *std::max_element(derived.p.begin(), derived.p.end());
    r.min_n = *std::min_element(derived.n.begin(), derived.n.end());
    const BvEstimates bv = estimate_bv(state.n1, state.n2, derived.c1, derived.c2);
    r.bv_c1 = bv.c1;
    r.bv_c2 = bv.c2;
    r.bv_n1 = bv.n1;
    r.bv_n2 = bv.n2;
    auto [p_absw, w_minus] = estimate_w_pair(derived, grid);
    (void)p_absw;
    r.w_minus_L1 = w_minus;
    std::tie(r.px_Linf, r.pxx_L1) = corollary_norms(derived, grid);
    auto [energy, dissipation] = energy_and_dissipation(state, derived, model, grid);
    (void)dissipation;
    r.energy = energy;
    r.comp_residual = complementarity_residual(state, derived, model, grid);
    std::tie(r.seg_ncc, r.seg_n1n2) = segregation_indicators(state, derived, grid);
    return r;
}

} // namespace tsg
