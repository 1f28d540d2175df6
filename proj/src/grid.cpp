#include "tsg/grid.hpp"

#include "tsg/errors.hpp"

#include <numeric>

namespace tsg {

Grid::Grid(double L, int N) : half_width(L), cell_count(N) {
    if (L <= 0.0)
        throw ConfigError("grid half-width must be positive");
    if (N < 1)
        throw ConfigError("grid cell count must be positive");
    spacing = 2.0 * L / N;
    centers.resize(N);
    for (int j = 0; j < N; ++j)
        centers[j] = -L + (j + 0.5) * spacing;
}

std::vector<double> gradient_at_faces(std::span<const double> field, const Grid& grid) {
    const int n = grid.cell_count;
    std::vector<double> faces(n + 1, 0.0);
    const double inv_dx = 1.0 / grid.spacing;
    for (int j = 1; j < n; ++j)
        faces[j] = (field[j] - field[j - 1]) * inv_dx;
    return faces;
}

std::vector<double> second_difference(std::span<const double> field, const Grid& grid) {
    const int n = grid.cell_count;
    if (n < 2)
        throw NumericalError("second_difference needs at least two cells");
    std::vector<double> out(n);
    const double inv_dx2 = 1.0 / (grid.spacing * grid.spacing);
    out[0] = (field[1] - field[0]) * inv_dx2;
    for (int j = 1; j < n - 1; ++j)
        out[j] = (field[j + 1] - 2.0 * field[j] + field[j - 1]) * inv_dx2;
    out[n - 1] = (field[n - 2] - field[n - 1]) * inv_dx2;
    return out;
}

double integrate(std::span<const double> field, const Grid& grid) {
    double sum = std::accumulate(field.begin(), field.end(), 0.0);
    return grid.spacing * sum;
}

} // namespace tsg
