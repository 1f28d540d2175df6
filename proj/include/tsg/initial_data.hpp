#pragma once

#include "tsg/grid.hpp"
#include "tsg/model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tsg {

enum class ProfileShape { indicator, bump, uniform };

/// One initial-data profile for one species.
///   indicator(x0, x1, h)   exact cell averages of h 1_{[x0,x1]}
///   bump(center, width, h) smooth compactly supported, peak h
///   uniform(h)             h on the whole domain
struct ProfileSpec {
    ProfileShape shape = ProfileShape::uniform;
    int species = 1; // 1 or 2
    double a = 0.0;  // x0 / center / h
    double b = 0.0;  // x1 / width
    double h = 0.0;  // height (unused for uniform, which stores h in a)

    static ProfileSpec indicator(int species, double x0, double x1, double h);
    static ProfileSpec bump(int species, double center, double width, double h);
    static ProfileSpec uniform(int species, double h);

    bool compact() const { return shape != ProfileShape::uniform || a == 0.0; }
    std::string to_string() const;
};

/// Sample the profiles on the grid; profiles for the same species add up.
/// Compact profiles must sit strictly inside (-L/2, L/2).
std::pair<std::vector<double>, std::vector<double>>
build_initial(const std::vector<ProfileSpec>& profiles, const Grid& grid);

/// Well-preparedness audit. Advisory: reports the measured quantities and
/// flags, never blocks a run.
struct WellPreparedReport {
    double max_p0 = 0.0;
    double homeostatic_pressure = 0.0;
    bool pressure_ok = false;    // max p(0) <= P_H
    double pxx_L1_0 = 0.0;       // curvature proxy at t = 0
    double tv_c1_0 = 0.0;
    double tv_c2_0 = 0.0;
    double tv_n1_0 = 0.0;
    double tv_n2_0 = 0.0;
    std::vector<std::string> notes;
};

WellPreparedReport audit_well_prepared(std::span<const double> n1, std::span<const double> n2,
                                       double gamma, double epsilon, const GrowthModel& model,
                                       const Grid& grid, double vac_tol = 1e-12);

} // namespace tsg
