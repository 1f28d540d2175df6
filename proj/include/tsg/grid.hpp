#pragma once

#include <span>
#include <vector>

namespace tsg {

/// Uniform cell-centred grid on (-L, L) with homogeneous-Neumann discrete
/// calculus. Cell j has center x_j = -L + (j + 1/2) dx, dx = 2L/N.
/// Boundary faces carry zero flux by construction; ghost cells mirror.
struct Grid {
    double half_width = 1.0; // L
    int cell_count = 0;      // N
    double spacing = 0.0;    // dx
    std::vector<double> centers;

    Grid() = default;
    Grid(double L, int N);

    double left_face(int j) const { return -half_width + j * spacing; }
};

/// Face gradient: result[j] sits on face j-1/2 of cell j, so result has
/// N+1 entries. Interior face j holds (f[j] - f[j-1])/dx; the two boundary
/// faces are 0 (Neumann).
std::vector<double> gradient_at_faces(std::span<const double> field, const Grid& grid);

/// Three-point second difference with mirrored ghost cells at both ends:
/// (f[1] - f[0])/dx^2 at j = 0 and symmetrically at j = N-1.
/// Throws NumericalError for N < 2.
std::vector<double> second_difference(std::span<const double> field, const Grid& grid);

/// Midpoint rule: dx * sum(field).
double integrate(std::span<const double> field, const Grid& grid);

} // namespace tsg
