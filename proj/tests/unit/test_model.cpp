#include "tsg/errors.hpp"
#include "tsg/model.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

using namespace tsg;
using tsg::testing::invasion_model;
using tsg::testing::segregated_model;
using tsg::testing::zero_model;

namespace {

// adaptive Simpson quadrature, independent of the closed-form antiderivatives
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double quad(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

} // namespace

TEST_CASE("eval_rates") {
    const GrowthModel m = invasion_model();
    SUBCASE("at p = 0 every term is at its maximum and F(0) = G(0) = 2") {
        const Rates r = m.eval_rates(0.0);
        CHECK(r.f1 == 1.0);
        CHECK(r.g2 == 1.0);
        CHECK(r.g1 == 1.0);
        CHECK(r.f2 == 1.0);
        CHECK(r.f == 2.0);
        CHECK(r.g == 2.0);
    }
    SUBCASE("at the homeostatic pressure") {
        const Rates r = m.eval_rates(3.0);
        CHECK(r.f1 == 0.0);
        CHECK(r.g2 == -2.0);
        CHECK(r.g1 == 0.0);
        CHECK(r.f2 == 0.0);
        CHECK(r.f == 0.0);
        CHECK(r.g == -2.0);
    }
    SUBCASE("zero model") {
        const GrowthModel z = zero_model();
        for (double p : {0.0, 0.7, 5.0}) {
            const Rates r = z.eval_rates(p);
            CHECK(r.f1 == 0.0);
            CHECK(r.f == 0.0);
            CHECK(r.g == 0.0);
        }
    }
    SUBCASE("negative pressure is rejected") {
        CHECK_THROWS_AS(m.eval_rates(-0.1), NumericalError);
    }
}

TEST_CASE("eval_rate_derivatives") {
    const GrowthModel m = invasion_model();
    SUBCASE("affine slope is constant") {
        for (double p : {0.0, 1.5, 3.0, 10.0})
            CHECK(m.eval_rate_derivatives(p).f1 == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    }
    SUBCASE("truncated term: slope past the kink is zero, one-sided from below at the kink") {
        CHECK(m.eval_rate_derivatives(2.0).g1 == 0.0);
        CHECK(m.eval_rate_derivatives(0.5).g1 == -1.0);
        CHECK(m.eval_rate_derivatives(1.0).g1 == -1.0);
    }
    SUBCASE("zero model") {
        const RateDerivatives d = zero_model().eval_rate_derivatives(1.0);
        CHECK(d.f == 0.0);
        CHECK(d.g == 0.0);
    }
}

TEST_CASE("antiderivatives") {
    SUBCASE("zero model") {
        auto [h1, h2] = zero_model().antiderivatives(2.0);
        CHECK(h1 == 0.0);
        CHECK(h2 == 0.0);
    }
    SUBCASE("single affine term integrates by hand: H1(1) = 2(1 - 1/2) = 1") {
        const GrowthModel m(GrowthTerm::affine(2.0, 1.0), GrowthTerm::zero(), GrowthTerm::zero(),
                            GrowthTerm::affine(1.0, 1.0));
        CHECK(m.antiderivatives(1.0).first == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(m.antiderivatives(0.0).first == 0.0);
    }
    SUBCASE("closed forms match adaptive quadrature of the rates") {
        const GrowthModel m = invasion_model();
        for (double p : {0.3, 0.9, 1.0, 1.7, 2.9, 3.0, 4.2}) {
            auto [h1, h2] = m.antiderivatives(p);
            const double h1q = quad([&](double z) { return m.eval_rates(z).f; }, 0.0, p);
            const double h2q = quad([&](double z) { return m.eval_rates(z).g; }, 0.0, p);
            CHECK(h1 == doctest::Approx(h1q).epsilon(1e-10));
            CHECK(h2 == doctest::Approx(h2q).epsilon(1e-10));
        }
    }
    SUBCASE("central difference of H1 recovers F away from the kinks") {
        const GrowthModel m = invasion_model();
        std::mt19937 rng(77);
        std::uniform_real_distribution<double> uni(0.0, 6.0);
        const double delta = 1e-5;
        int tested = 0;
        while (tested < 1000) {
            const double p = uni(rng);
            if (p < 2.0 * delta || std::abs(p - 1.0) < 10.0 * delta ||
                std::abs(p - 3.0) < 10.0 * delta)
                continue; // H is only C^1 at the kinks
            const double fd =
                (m.antiderivatives(p + delta).first - m.antiderivatives(p - delta).first) /
                (2.0 * delta);
            CHECK(fd == doctest::Approx(m.eval_rates(p).f).epsilon(1e-9));
            ++tested;
        }
    }
}

TEST_CASE("homeostatic pressure") {
    SUBCASE("invasion model: largest threshold wins") {
        CHECK(invasion_model().homeostatic_pressure() == 3.0);
    }
    SUBCASE("no cross terms") { CHECK(segregated_model().homeostatic_pressure() == 1.0); }
    SUBCASE("plain affine cross term never vanishes") {
        CHECK_THROWS_AS(GrowthModel(GrowthTerm::affine(1.0, 3.0), GrowthTerm::affine(1.0, 1.0),
                                    GrowthTerm::zero(), GrowthTerm::affine(1.0, 1.0)),
                        InfeasibleModelError);
    }
    SUBCASE("the defining property holds at P_H and fails just below") {
        const GrowthModel m = invasion_model();
        auto holds = [&](double p) {
            const Rates r = m.eval_rates(p);
            return r.f1 <= 0.0 && r.g2 <= 0.0 && r.f2 == 0.0 && r.g1 == 0.0;
        };
        const double ph = m.homeostatic_pressure();
        CHECK(holds(ph));
        CHECK_FALSE(holds(ph - 1e-9));
    }
}

TEST_CASE("reaction bound R_inf") {
    // piecewise affine rates: the extrema sit at the endpoints of [0, P_H]
    CHECK(invasion_model().reaction_bound() == 2.0);
    CHECK(segregated_model().reaction_bound() == 2.0);
    CHECK(zero_model().reaction_bound() == 0.0);
}

TEST_CASE("check_feasibility") {
    SUBCASE("invasion model satisfies everything") {
        const FeasibilityReport rep = invasion_model().check_feasibility();
        CHECK(rep.feasible());
        CHECK(rep.balanced_at_zero);
        CHECK(rep.f_at_zero == 2.0);
        CHECK(rep.g_at_zero == 2.0);
    }
    SUBCASE("segregated model violates only the technical F(0) = G(0) clause") {
        const FeasibilityReport rep = segregated_model().check_feasibility();
        CHECK(rep.feasible());
        CHECK_FALSE(rep.balanced_at_zero);
        CHECK(rep.f_at_zero == 2.0);
        CHECK(rep.g_at_zero == 1.0);
        CHECK_FALSE(rep.notes.empty());
    }
    SUBCASE("zero model is not strictly decreasing") {
        const FeasibilityReport rep = zero_model().check_feasibility();
        CHECK_FALSE(rep.monotone);
        CHECK_FALSE(rep.feasible());
    }
}

TEST_CASE("monotonicity on [0, P_H]") {
    const GrowthModel m = invasion_model();
    const double ph = m.homeostatic_pressure();
    const Rates at_ph = m.eval_rates(ph);
    for (int i = 0; i <= 50; ++i) {
        const double p = ph * i / 50.0;
        const Rates r = m.eval_rates(p);
        CHECK(r.f1 >= at_ph.f1);
        CHECK(r.g1 >= 0.0);
        CHECK(r.f2 >= 0.0);
    }
}
