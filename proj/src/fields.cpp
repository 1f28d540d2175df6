#include "tsg/fields.hpp"

#include "tsg/errors.hpp"

#include <cmath>
#include <string>

namespace tsg {

std::vector<double> pressure_from_density(std::span<const double> n, double gamma,
                                          double tol_pos) {
    std::vector<double> p(n.size());
    for (std::size_t j = 0; j < n.size(); ++j) {
        double v = n[j];
        if (v < 0.0) {
            if (v < -tol_pos)
                throw NumericalError("density " + std::to_string(v) + " below clamp window at cell " +
                                     std::to_string(j));
            v = 0.0;
        }
        p[j] = std::pow(v, gamma);
    }
    return p;
}

void fractions(std::span<const double> n1, std::span<const double> n2, double vac_tol,
               std::vector<double>& c1, std::vector<double>& c2) {
    const std::size_t n = n1.size();
    c1.resize(n);
    c2.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double total = n1[j] + n2[j];
        if (total > vac_tol) {
            c1[j] = n1[j] / total;
            c2[j] = n2[j] / total;
        } else {
            c1[j] = 0.5;
            c2[j] = 0.5;
        }
    }
}

std::vector<double> reaction_field(std::span<const double> c1, std::span<const double> c2,
                                   std::span<const double> p, const GrowthModel& model) {
    std::vector<double> r(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
        Rates rates = model.eval_rates(p[j]);
        r[j] = c1[j] * rates.f + c2[j] * rates.g;
    }
    return r;
}

std::vector<double> ab_field(std::span<const double> p, std::span<const double> reaction,
                             const Grid& grid) {
    std::vector<double> w = second_difference(p, grid);
    for (std::size_t j = 0; j < w.size(); ++j)
        w[j] += reaction[j];
    return w;
}

std::vector<double> face_velocity(std::span<const double> p, const Grid& grid) {
    std::vector<double> u = gradient_at_faces(p, grid);
    for (double& v : u)
        v = -v;
    return u;
}

DerivedFields derive_fields(const SimState& state, const Grid& grid, const GrowthModel& model,
                            const Tolerances& tol) {
    DerivedFields d;
    const std::size_t n = state.n1.size();
    d.n.resize(n);
    double clamped = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double total = state.n1[j] + state.n2[j];
        if (total < 0.0 && total >= -tol.tol_pos) {
            clamped += -total * grid.spacing;
            total = 0.0;
        }
        d.n[j] = total;
    }
    d.clamped_mass = clamped;
    d.p = pressure_from_density(d.n, state.gamma, tol.tol_pos);
    fractions(state.n1, state.n2, tol.vac_tol, d.c1, d.c2);
    d.reaction = reaction_field(d.c1, d.c2, d.p, model);
    d.w = ab_field(d.p, d.reaction, grid);
    d.velocity = face_velocity(d.p, grid);
    return d;
}

} // namespace tsg
