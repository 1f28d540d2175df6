#include "tsg/errors.hpp"
#include "tsg/grid.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tsg;

TEST_CASE("grid geometry") {
    Grid g(3.0, 600);
    CHECK(g.spacing == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(g.centers.front() == doctest::Approx(-3.0 + 0.005).epsilon(1e-14));
    CHECK(g.centers.back() == doctest::Approx(3.0 - 0.005).epsilon(1e-14));
    // strictly increasing and symmetric about 0
    for (int j = 1; j < g.cell_count; ++j)
        CHECK(g.centers[j] > g.centers[j - 1]);
    for (int j = 0; j < g.cell_count; ++j)
        CHECK(g.centers[j] == doctest::Approx(-g.centers[g.cell_count - 1 - j]).epsilon(1e-13));
    CHECK(g.spacing * g.cell_count == doctest::Approx(2.0 * g.half_width).epsilon(1e-15));
}

TEST_CASE("gradient_at_faces") {
    SUBCASE("constant field gives zero everywhere") {
        Grid g(1.0, 16);
        std::vector<double> f(16, 4.2);
        const auto faces = gradient_at_faces(f, g);
        REQUIRE(faces.size() == 17);
        for (double v : faces)
            CHECK(v == 0.0);
    }
    SUBCASE("linear field is exact on interior faces, zero on boundary") {
        Grid g(2.0, 8); // dx = 0.5
        CHECK(g.spacing == 0.5);
        const auto faces = gradient_at_faces(g.centers, g);
        CHECK(faces.front() == 0.0);
        CHECK(faces.back() == 0.0);
        for (int f = 1; f < 8; ++f)
            CHECK(faces[f] == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("quadratic field: interior face value is x_j + x_{j+1}") {
        Grid g(1.0, 8);
        std::vector<double> f(8);
        for (int j = 0; j < 8; ++j)
            f[j] = g.centers[j] * g.centers[j];
        const auto faces = gradient_at_faces(f, g);
        for (int k = 1; k < 8; ++k)
            CHECK(faces[k] == doctest::Approx(g.centers[k - 1] + g.centers[k]).epsilon(1e-13));
    }
}

TEST_CASE("second_difference") {
    SUBCASE("constant gives zeros") {
        Grid g(1.0, 12);
        std::vector<double> f(12, -7.0);
        for (double v : second_difference(f, g))
            CHECK(v == 0.0);
    }
    SUBCASE("exact for quadratics on interior cells") {
        Grid g(1.0, 20);
        std::vector<double> f(20);
        for (int j = 0; j < 20; ++j)
            f[j] = g.centers[j] * g.centers[j];
        const auto d2 = second_difference(f, g);
        for (int j = 1; j < 19; ++j)
            CHECK(d2[j] == doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("sine refinement study approaches the analytic second derivative") {
        auto max_interior_error = [](int n) {
            Grid g(1.0, n);
            std::vector<double> f(n);
            for (int j = 0; j < n; ++j)
                f[j] = std::sin(M_PI * g.centers[j]);
            const auto d2 = second_difference(f, g);
            double err = 0.0;
            for (int j = 1; j < n - 1; ++j)
                err = std::max(err, std::abs(d2[j] + M_PI * M_PI * std::sin(M_PI * g.centers[j])));
            return err;
        };
        const double e64 = max_interior_error(64);
        const double e128 = max_interior_error(128);
        CHECK(e128 < e64);
        CHECK(e64 / e128 > 3.5); // second order
    }
    SUBCASE("grid too small") {
        Grid g(1.0, 1);
        std::vector<double> f(1, 0.0);
        CHECK_THROWS_AS(second_difference(f, g), NumericalError);
    }
}

TEST_CASE("integrate") {
    SUBCASE("measure of the domain") {
        Grid g(3.0, 600);
        std::vector<double> ones(600, 1.0);
        CHECK(integrate(ones, g) == doctest::Approx(6.0).epsilon(1e-13));
    }
    SUBCASE("zero field") {
        Grid g(3.0, 40);
        std::vector<double> z(40, 0.0);
        CHECK(integrate(z, g) == 0.0);
    }
    SUBCASE("indicator of [0,1] has mass 1 up to dx") {
        Grid g(3.0, 600);
        std::vector<double> f(600, 0.0);
        for (int j = 0; j < 600; ++j)
            if (g.centers[j] >= 0.0 && g.centers[j] <= 1.0)
                f[j] = 1.0;
        CHECK(std::abs(integrate(f, g) - 1.0) <= g.spacing);
    }
}

TEST_CASE("summation by parts: divergence of a boundary-vanishing flux integrates to zero") {
    Grid g(2.0, 128);
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> flux(129, 0.0);
    for (int f = 1; f < 128; ++f)
        flux[f] = uni(rng);
    std::vector<double> div(128);
    for (int j = 0; j < 128; ++j)
        div[j] = (flux[j + 1] - flux[j]) / g.spacing;
    CHECK(std::abs(integrate(div, g)) < 1e-13);
}
