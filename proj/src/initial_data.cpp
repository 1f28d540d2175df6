#include "tsg/initial_data.hpp"

#include "tsg/diagnostics.hpp"
#include "tsg/errors.hpp"
#include "tsg/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tsg {

ProfileSpec ProfileSpec::indicator(int species, double x0, double x1, double h) {
    if (x0 >= x1)
        throw ConfigError("indicator needs x0 < x1");
    if (h < 0.0)
        throw ConfigError("indicator height must be nonnegative");
    ProfileSpec s;
    s.shape = ProfileShape::indicator;
    s.species = species;
    s.a = x0;
    s.b = x1;
    s.h = h;
    return s;
}

ProfileSpec ProfileSpec::bump(int species, double center, double width, double h) {
    if (width <= 0.0)
        throw ConfigError("bump width must be positive");
    if (h < 0.0)
        throw ConfigError("bump height must be nonnegative");
    ProfileSpec s;
    s.shape = ProfileShape::bump;
    s.species = species;
    s.a = center;
    s.b = width;
    s.h = h;
    return s;
}

ProfileSpec ProfileSpec::uniform(int species, double h) {
    if (h < 0.0)
        throw ConfigError("uniform height must be nonnegative");
    ProfileSpec s;
    s.shape = ProfileShape::uniform;
    s.species = species;
    s.a = h;
    return s;
}

std::string ProfileSpec::to_string() const {
    std::ostringstream os;
    switch (shape) {
    case ProfileShape::indicator:
        os << "indicator(" << a << ", " << b << ", " << h << ")";
        break;
    case ProfileShape::bump:
        os << "bump(" << a << ", " << b << ", " << h << ")";
        break;
    case ProfileShape::uniform:
        os << "uniform(" << a << ")";
        break;
    }
    return os.str();
}

namespace {

void check_support(double lo, double hi, const ProfileSpec& spec, const Grid& grid) {
    const double half = grid.half_width / 2.0;
    if (lo <= -half || hi >= half)
        throw ConfigError("profile " + spec.to_string() +
                          " must be supported strictly inside (-L/2, L/2) = (" +
                          std::to_string(-half) + ", " + std::to_string(half) + ")");
}

void add_profile(const ProfileSpec& spec, const Grid& grid, std::vector<double>& out) {
    const int n = grid.cell_count;
    const double dx = grid.spacing;
    switch (spec.shape) {
    case ProfileShape::uniform:
        for (int j = 0; j < n; ++j)
            out[j] += spec.a;
        return;
    case ProfileShape::indicator: {
        check_support(spec.a, spec.b, spec, grid);
        // exact cell averages, fractional cells at the ends
        for (int j = 0; j < n; ++j) {
            const double lo = grid.left_face(j);
            const double hi = lo + dx;
            const double overlap = std::max(0.0, std::min(hi, spec.b) - std::max(lo, spec.a));
            out[j] += spec.h * overlap / dx;
        }
        return;
    }
    case ProfileShape::bump: {
        check_support(spec.a - spec.b, spec.a + spec.b, spec, grid);
        for (int j = 0; j < n; ++j) {
            const double s = (grid.centers[j] - spec.a) / spec.b;
            if (std::abs(s) < 1.0)
                out[j] += spec.h * std::exp(1.0 - 1.0 / (1.0 - s * s));
        }
        return;
    }
    }
}

} // namespace

std::pair<std::vector<double>, std::vector<double>>
build_initial(const std::vector<ProfileSpec>& profiles, const Grid& grid) {
    std::vector<double> n1(grid.cell_count, 0.0), n2(grid.cell_count, 0.0);
    for (const auto& spec : profiles) {
        if (spec.species != 1 && spec.species != 2)
            throw ConfigError("profile species must be 1 or 2");
        add_profile(spec, grid, spec.species == 1 ? n1 : n2);
    }
    return {std::move(n1), std::move(n2)};
}

WellPreparedReport audit_well_prepared(std::span<const double> n1, std::span<const double> n2,
                                       double gamma, double epsilon, const GrowthModel& model,
                                       const Grid& grid, double vac_tol) {
    WellPreparedReport rep;
    const std::size_t n = n1.size();

    std::vector<double> total(n);
    for (std::size_t j = 0; j < n; ++j)
        total[j] = n1[j] + n2[j] + 2.0 * epsilon;
    std::vector<double> p = pressure_from_density(total, gamma);
    rep.max_p0 = *std::max_element(p.begin(), p.end());
    rep.homeostatic_pressure = model.homeostatic_pressure();
    rep.pressure_ok = rep.max_p0 <= rep.homeostatic_pressure;
    if (!rep.pressure_ok) {
        std::ostringstream os;
        os << "initial pressure " << rep.max_p0 << " exceeds the homeostatic pressure "
           << rep.homeostatic_pressure;
        rep.notes.push_back(os.str());
    }

    std::vector<double> pxx = second_difference(p, grid);
    double l1 = 0.0;
    for (double v : pxx)
        l1 += std::abs(v);
    rep.pxx_L1_0 = grid.spacing * l1;

    std::vector<double> n1e(n), n2e(n), c1, c2;
    for (std::size_t j = 0; j < n; ++j) {
        n1e[j] = n1[j] + epsilon;
        n2e[j] = n2[j] + epsilon;
    }
    fractions(n1e, n2e, vac_tol, c1, c2);
    const BvEstimates bv = estimate_bv(n1e, n2e, c1, c2);
    rep.tv_c1_0 = bv.c1;
    rep.tv_c2_0 = bv.c2;
    rep.tv_n1_0 = bv.n1;
    rep.tv_n2_0 = bv.n2;
    return rep;
}

} // namespace tsg
