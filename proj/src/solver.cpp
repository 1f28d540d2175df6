#include "tsg/solver.hpp"

#include "tsg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tsg {

namespace {

// Donor-cell value at each interior face; arithmetic mean on a zero-velocity
// face (measure-zero tie).
inline double upwind_value(double u_face, double left, double right) {
    if (u_face > 0.0)
        return left;
    if (u_face < 0.0)
        return right;
    return 0.5 * (left + right);
}

void clamp_species(std::vector<double>& v, double tol_pos, double dx, double& clamped,
                   const char* which) {
    for (double& x : v) {
        if (x < 0.0) {
            if (x < -tol_pos)
                throw NumericalError(std::string(which) + " undershoot " + std::to_string(x) +
                                     " beyond the clamp window");
            clamped += -x * dx;
            x = 0.0;
        }
    }
}

void check_finite(const std::vector<double>& v, const char* which) {
    for (double x : v)
        if (!std::isfinite(x))
            throw NumericalError(std::string("non-finite ") + which + " value after step");
}

// Tridiagonal solve (Thomas). Diagonals are overwritten.
void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag,
                       std::vector<double>& upper, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

} // namespace

SimState regularise_initial(std::span<const double> n1_init, std::span<const double> n2_init,
                            double gamma, double epsilon) {
    if (epsilon < 0.0)
        throw ConfigError("epsilon must be nonnegative");
    SimState s;
    s.gamma = gamma;
    s.epsilon = epsilon;
    s.t = 0.0;
    s.n1.assign(n1_init.begin(), n1_init.end());
    s.n2.assign(n2_init.begin(), n2_init.end());
    for (std::size_t j = 0; j < s.n1.size(); ++j) {
        if (n1_init[j] < 0.0 || n2_init[j] < 0.0)
            throw ConfigError("initial densities must be nonnegative");
        s.n1[j] += epsilon;
        s.n2[j] += epsilon;
    }
    return s;
}

double stable_dt(const SimState& state, const DerivedFields& derived, const Grid& grid,
                 const GrowthModel& model, const SchemeConfig& cfg) {
    const double dx = grid.spacing;
    double max_p = 0.0;
    for (double p : derived.p)
        max_p = std::max(max_p, p);
    double max_u = 0.0;
    for (double u : derived.velocity)
        max_u = std::max(max_u, std::abs(u));

    double dt = cfg.dt_max;
    constexpr double guard = 1e-30;
    if (cfg.scheme == Scheme::explicit_upwind) {
        const double denom = 2.0 * state.gamma * max_p + 2.0 * dx * max_u + guard;
        dt = std::min(dt, cfg.cfl * dx * dx / denom);
    } else {
        if (max_u > 0.0)
            dt = std::min(dt, cfg.cfl * dx / max_u);
        const double r_inf = model.reaction_bound();
        if (r_inf > 0.0)
            dt = std::min(dt, cfg.cfl / r_inf);
    }
    return dt;
}

std::pair<SimState, StepReport> explicit_step(const SimState& state, const Grid& grid,
                                              const GrowthModel& model, const SchemeConfig& cfg,
                                              double dt) {
    return explicit_step(state, derive_fields(state, grid, model, cfg.tol), grid, model, cfg, dt);
}

std::pair<SimState, StepReport> explicit_step(const SimState& state, const DerivedFields& d,
                                              const Grid& grid, const GrowthModel& model,
                                              const SchemeConfig& cfg, double dt) {
    const int n = grid.cell_count;
    const double dx = grid.spacing;
    const Tolerances& tol = cfg.tol;

    SimState out;
    out.t = state.t + dt;
    out.gamma = state.gamma;
    out.epsilon = state.epsilon;
    out.n1.resize(n);
    out.n2.resize(n);

    // Interior faces only; boundary faces carry zero flux.
    std::vector<double> flux1(n + 1, 0.0), flux2(n + 1, 0.0);
    for (int f = 1; f < n; ++f) {
        const double u = d.velocity[f];
        flux1[f] = u * upwind_value(u, state.n1[f - 1], state.n1[f]);
        flux2[f] = u * upwind_value(u, state.n2[f - 1], state.n2[f]);
    }

    const double lambda = dt / dx;
    for (int j = 0; j < n; ++j) {
        const Rates r = model.eval_rates(d.p[j]);
        out.n1[j] = state.n1[j] - lambda * (flux1[j + 1] - flux1[j]) +
                    dt * (state.n1[j] * r.f1 + state.n2[j] * r.g1);
        out.n2[j] = state.n2[j] - lambda * (flux2[j + 1] - flux2[j]) +
                    dt * (state.n1[j] * r.f2 + state.n2[j] * r.g2);
    }

    StepReport rep;
    rep.dt_used = dt;
    rep.clamped_mass = d.clamped_mass;
    check_finite(out.n1, "n1");
    check_finite(out.n2, "n2");
    clamp_species(out.n1, tol.tol_pos, dx, rep.clamped_mass, "n1");
    clamp_species(out.n2, tol.tol_pos, dx, rep.clamped_mass, "n2");

    rep.max_p = 0.0;
    rep.min_n = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        rep.max_p = std::max(rep.max_p, std::pow(out.n1[j] + out.n2[j], state.gamma));
        rep.min_n = std::min(rep.min_n, out.n1[j] + out.n2[j]);
    }
    return {std::move(out), rep};
}

std::pair<SimState, StepReport> semi_implicit_step(const SimState& state, const Grid& grid,
                                                   const GrowthModel& model,
                                                   const SchemeConfig& cfg, double dt) {
    return semi_implicit_step(state, derive_fields(state, grid, model, cfg.tol), grid, model, cfg,
                              dt);
}

std::pair<SimState, StepReport> semi_implicit_step(const SimState& state, const DerivedFields& d,
                                                   const Grid& grid, const GrowthModel& model,
                                                   const SchemeConfig& cfg, double dt) {
    const int n = grid.cell_count;
    const double dx = grid.spacing;
    const double inv_dx2 = 1.0 / (dx * dx);
    const Tolerances& tol = cfg.tol;
    const double gamma = state.gamma;
    const double m_exp = gamma + 1.0;
    const double kappa = dt * gamma / (gamma + 1.0);

    // rhs = n + dt n R at the old time level.
    std::vector<double> rhs(n);
    for (int j = 0; j < n; ++j)
        rhs[j] = d.n[j] * (1.0 + dt * d.reaction[j]);

    // Residual G(v) = v - kappa D2(v^{gamma+1}) - rhs.
    std::vector<double> v = d.n; // initial guess: old density
    std::vector<double> pme(n), resid(n);
    auto eval_residual = [&](const std::vector<double>& x, std::vector<double>& r) {
        for (int j = 0; j < n; ++j)
            pme[j] = std::pow(x[j], m_exp);
        r[0] = x[0] - kappa * (pme[1] - pme[0]) * inv_dx2 - rhs[0];
        for (int j = 1; j < n - 1; ++j)
            r[j] = x[j] - kappa * (pme[j + 1] - 2.0 * pme[j] + pme[j - 1]) * inv_dx2 - rhs[j];
        r[n - 1] = x[n - 1] - kappa * (pme[n - 2] - pme[n - 1]) * inv_dx2 - rhs[n - 1];
        double norm = 0.0;
        for (double e : r)
            norm = std::max(norm, std::abs(e));
        return norm;
    };

    std::vector<double> lower(n), diag(n), upper(n), delta(n), trial(n);
    double res_norm = eval_residual(v, resid);
    int iters = 0;
    while (res_norm > cfg.newton_tol) {
        if (iters >= cfg.newton_max_iter)
            throw NumericalError("newton-divergence: residual " + std::to_string(res_norm) +
                                 " after " + std::to_string(iters) + " iterations");
        // J = I - kappa D2 diag(m v^gamma); tridiagonal, strictly dominant.
        for (int j = 0; j < n; ++j) {
            const double mprime = m_exp * std::pow(v[j], gamma);
            const double c = (j == 0 || j == n - 1) ? 1.0 : 2.0;
            diag[j] = 1.0 + kappa * c * inv_dx2 * mprime;
        }
        for (int j = 1; j < n; ++j)
            lower[j] = -kappa * inv_dx2 * m_exp * std::pow(v[j - 1], gamma);
        for (int j = 0; j + 1 < n; ++j)
            upper[j] = -kappa * inv_dx2 * m_exp * std::pow(v[j + 1], gamma);
        for (int j = 0; j < n; ++j)
            delta[j] = -resid[j];
        solve_tridiagonal(lower, diag, upper, delta);

        double theta = 1.0;
        double new_norm = res_norm;
        for (int damp = 0; damp <= 30; ++damp) {
            for (int j = 0; j < n; ++j)
                trial[j] = std::max(v[j] + theta * delta[j], 0.0);
            new_norm = eval_residual(trial, resid);
            if (new_norm < res_norm || damp == 30)
                break;
            theta *= 0.5;
        }
        v.swap(trial);
        res_norm = new_norm;
        ++iters;
    }

    // Fractions advected with the updated velocity; reactions per the
    // fraction equations, evaluated at the updated pressure.
    std::vector<double> p_new = pressure_from_density(v, gamma, tol.tol_pos);
    std::vector<double> u_new = face_velocity(p_new, grid);

    std::vector<double> c1_new(n), c2_new(n);
    for (int j = 0; j < n; ++j) {
        const double a = 0.5 * (u_new[j] + u_new[j + 1]); // cell-centred velocity
        double dc1, dc2;
        if (a > 0.0) {
            dc1 = (d.c1[j] - d.c1[std::max(j - 1, 0)]) / dx;
            dc2 = (d.c2[j] - d.c2[std::max(j - 1, 0)]) / dx;
        } else {
            dc1 = (d.c1[std::min(j + 1, n - 1)] - d.c1[j]) / dx;
            dc2 = (d.c2[std::min(j + 1, n - 1)] - d.c2[j]) / dx;
        }
        const Rates r = model.eval_rates(p_new[j]);
        const double c1 = d.c1[j], c2 = d.c2[j];
        const double r1 = c1 * r.f1 + c2 * r.g1 - c1 * c1 * r.f - c1 * c2 * r.g;
        const double r2 = c1 * r.f2 + c2 * r.g2 - c2 * c2 * r.g - c1 * c2 * r.f;
        c1_new[j] = c1 - dt * a * dc1 + dt * r1;
        c2_new[j] = c2 - dt * a * dc2 + dt * r2;
        // renormalise; the pair stays near the simplex so the sum is ~1
        c1_new[j] = std::clamp(c1_new[j], 0.0, 1.0);
        c2_new[j] = std::clamp(c2_new[j], 0.0, 1.0);
        const double sum = c1_new[j] + c2_new[j];
        if (sum > 0.0) {
            c1_new[j] /= sum;
            c2_new[j] /= sum;
        } else {
            c1_new[j] = c2_new[j] = 0.5;
        }
    }

    SimState out;
    out.t = state.t + dt;
    out.gamma = gamma;
    out.epsilon = state.epsilon;
    out.n1.resize(n);
    out.n2.resize(n);
    for (int j = 0; j < n; ++j) {
        out.n1[j] = c1_new[j] * v[j];
        out.n2[j] = c2_new[j] * v[j];
    }

    StepReport rep;
    rep.dt_used = dt;
    rep.clamped_mass = d.clamped_mass;
    rep.newton_iters = iters;
    check_finite(out.n1, "n1");
    check_finite(out.n2, "n2");
    rep.max_p = 0.0;
    rep.min_n = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        rep.max_p = std::max(rep.max_p, std::pow(out.n1[j] + out.n2[j], gamma));
        rep.min_n = std::min(rep.min_n, out.n1[j] + out.n2[j]);
    }
    return {std::move(out), rep};
}

std::pair<SimState, StepReport> advance(const SimState& state, const Grid& grid,
                                        const GrowthModel& model, const SchemeConfig& cfg,
                                        double dt) {
    if (cfg.scheme == Scheme::explicit_upwind)
        return explicit_step(state, grid, model, cfg, dt);
    return semi_implicit_step(state, grid, model, cfg, dt);
}

std::pair<SimState, StepReport> advance(const SimState& state, const DerivedFields& derived,
                                        const Grid& grid, const GrowthModel& model,
                                        const SchemeConfig& cfg, double dt) {
    if (cfg.scheme == Scheme::explicit_upwind)
        return explicit_step(state, derived, grid, model, cfg, dt);
    return semi_implicit_step(state, derived, grid, model, cfg, dt);
}

} // namespace tsg
