#pragma once

#include "tsg/grid.hpp"
#include "tsg/model.hpp"

#include <span>
#include <vector>

namespace tsg {

struct Tolerances {
    double vac_tol = 1e-12;  // vacuum threshold for the fraction tie-break
    double tol_pos = 1e-13;  // negative-density clamp window
    double seg_tol = 1e-8;   // segregation verdict, relative to initial mass
    double newton_tol = 1e-10;
};

/// Cell-averaged species densities at one time level.
struct SimState {
    std::vector<double> n1;
    std::vector<double> n2;
    double t = 0.0;
    double gamma = 2.0;   // stiffness exponent, > 1
    double epsilon = 0.0; // regularisation shift of the initial data
};

/// Everything recomputed from a SimState: total density, pressure p = n^gamma,
/// fractions, reaction field R = c1 F(p) + c2 G(p), face velocity u = -dp/dx,
/// and w = d2p/dx2 + R.
struct DerivedFields {
    std::vector<double> n;
    std::vector<double> p;
    std::vector<double> c1;
    std::vector<double> c2;
    std::vector<double> reaction;
    std::vector<double> w;
    std::vector<double> velocity; // faces, N+1
    double clamped_mass = 0.0;    // mass added by the negative-density clamp
};

/// p_j = n_j^gamma. Values in [-tol_pos, 0) are clamped to zero first;
/// anything more negative is a hard error.
std::vector<double> pressure_from_density(std::span<const double> n, double gamma,
                                          double tol_pos = 1e-13);

/// c_i = n_i / (n1 + n2) where the total exceeds vac_tol, (1/2, 1/2) below.
void fractions(std::span<const double> n1, std::span<const double> n2, double vac_tol,
               std::vector<double>& c1, std::vector<double>& c2);

std::vector<double> reaction_field(std::span<const double> c1, std::span<const double> c2,
                                   std::span<const double> p, const GrowthModel& model);

/// w = second_difference(p) + R.
std::vector<double> ab_field(std::span<const double> p, std::span<const double> reaction,
                             const Grid& grid);

/// u = -gradient_at_faces(p); boundary faces stay 0.
std::vector<double> face_velocity(std::span<const double> p, const Grid& grid);

DerivedFields derive_fields(const SimState& state, const Grid& grid, const GrowthModel& model,
                            const Tolerances& tol = {});

} // namespace tsg
