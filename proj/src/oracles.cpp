#include "tsg/oracles.hpp"

#include "tsg/errors.hpp"

#include <cmath>
#include <limits>

namespace tsg {

namespace {

struct BarenblattConstants {
    double m;     // gamma + 1
    double alpha; // 1/(m+1)
    double k;     // alpha (m-1) / (2m)
    double c;     // mass constant
    double rescale; // gamma/(gamma+1), the diffusion coefficient absorbed as time dilation
};

BarenblattConstants barenblatt_constants(const BarenblattSpec& spec) {
    BarenblattConstants bc{};
    bc.m = spec.gamma + 1.0;
    bc.alpha = 1.0 / (bc.m + 1.0);
    bc.k = bc.alpha * (bc.m - 1.0) / (2.0 * bc.m);
    bc.rescale = spec.gamma / (spec.gamma + 1.0);
    // mass M = C^{q+1/2} k^{-1/2} sqrt(pi) Gamma(q+1)/Gamma(q+3/2), q = 1/(m-1)
    const double q = 1.0 / (bc.m - 1.0);
    const double shape = std::sqrt(M_PI) * std::tgamma(q + 1.0) / std::tgamma(q + 1.5);
    bc.c = std::pow(spec.mass * std::sqrt(bc.k) / shape, 1.0 / (q + 0.5));
    return bc;
}

double profile_time(const BarenblattSpec& spec, double t) {
    const double shifted = t + spec.t0;
    if (shifted <= 0.0)
        throw NumericalError("barenblatt profile needs t + t0 > 0");
    return spec.gamma / (spec.gamma + 1.0) * shifted;
}

} // namespace

double barenblatt_profile(const BarenblattSpec& spec, double t, double x) {
    const BarenblattConstants bc = barenblatt_constants(spec);
    const double tau = profile_time(spec, t);
    const double scale = std::pow(tau, -bc.alpha);
    const double y = x * scale;
    const double arg = bc.c - bc.k * y * y;
    if (arg <= 0.0)
        return 0.0;
    return scale * std::pow(arg, 1.0 / (bc.m - 1.0));
}

std::vector<double> barenblatt_field(const BarenblattSpec& spec, double t, const Grid& grid) {
    std::vector<double> out(grid.cell_count);
    for (int j = 0; j < grid.cell_count; ++j)
        out[j] = barenblatt_profile(spec, t, grid.centers[j]);
    return out;
}

double barenblatt_support_radius(const BarenblattSpec& spec, double t) {
    const BarenblattConstants bc = barenblatt_constants(spec);
    const double tau = profile_time(spec, t);
    return std::sqrt(bc.c / bc.k) * std::pow(tau, bc.alpha);
}

OdeTrajectory uniform_ode_reference(double n1_0, double n2_0, double gamma,
                                    const GrowthModel& model, double T, double dt_ode,
                                    int sample_every) {
    if (n1_0 < 0.0 || n2_0 < 0.0)
        throw ConfigError("initial values must be nonnegative");
    const double ph = model.homeostatic_pressure();
    const double blowup =
        ph > 0.0 ? 10.0 * std::pow(ph, 1.0 / gamma) : std::numeric_limits<double>::infinity();

    auto rate = [&](double a, double b, double& da, double& db) {
        const double total = std::max(a + b, 0.0);
        const Rates r = model.eval_rates(std::pow(total, gamma));
        da = a * r.f1 + b * r.g1;
        db = a * r.f2 + b * r.g2;
    };

    OdeTrajectory traj;
    double a = n1_0, b = n2_0, t = 0.0;
    traj.times.push_back(t);
    traj.n1.push_back(a);
    traj.n2.push_back(b);

    const long steps = std::lround(T / dt_ode);
    for (long k = 0; k < steps; ++k) {
        const double dt = dt_ode;
        double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
        rate(a, b, k1a, k1b);
        rate(a + 0.5 * dt * k1a, b + 0.5 * dt * k1b, k2a, k2b);
        rate(a + 0.5 * dt * k2a, b + 0.5 * dt * k2b, k3a, k3b);
        rate(a + dt * k3a, b + dt * k3b, k4a, k4b);
        a += dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        b += dt / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        t = (k + 1) * dt_ode;
        if (a + b > blowup)
            throw NumericalError("ode reference exceeded the homeostatic density bound");
        if ((k + 1) % sample_every == 0 || k + 1 == steps) {
            traj.times.push_back(t);
            traj.n1.push_back(a);
            traj.n2.push_back(b);
        }
    }
    return traj;
}

std::vector<ConvergenceRow> convergence_study(Scheme scheme, const BarenblattSpec& spec,
                                              const std::vector<int>& grids, double half_width,
                                              double T, double cfl, double dt_max) {
    const GrowthModel no_growth{}; // reaction-free reduction

    std::vector<ConvergenceRow> rows;
    for (int n : grids) {
        Grid grid(half_width, n);
        SimState state;
        state.gamma = spec.gamma;
        state.epsilon = 0.0;
        state.n1 = barenblatt_field(spec, 0.0, grid);
        state.n2.assign(n, 0.0);

        SchemeConfig cfg;
        cfg.scheme = scheme;
        cfg.cfl = cfl;
        cfg.dt_max = dt_max;

        while (state.t < T) {
            DerivedFields d = derive_fields(state, grid, no_growth, cfg.tol);
            double dt = stable_dt(state, d, grid, no_growth, cfg);
            bool final_step = false;
            if (T - state.t <= dt * (1.0 + 1e-12)) {
                dt = T - state.t;
                final_step = true;
            }
            auto [next, rep] = advance(state, grid, no_growth, cfg, dt);
            state = std::move(next);
            if (final_step)
                state.t = T;
        }

        const std::vector<double> exact = barenblatt_field(spec, T, grid);
        double err = 0.0;
        for (int j = 0; j < n; ++j)
            err += std::abs(state.n1[j] + state.n2[j] - exact[j]);
        ConvergenceRow row;
        row.grid_n = n;
        row.error_l1 = grid.spacing * err;
        if (!rows.empty())
            row.observed_order = std::log2(rows.back().error_l1 / row.error_l1);
        rows.push_back(row);
    }
    return rows;
}

} // namespace tsg
