#include "numrange/ellipse.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace numrange;

namespace {

EllipseHull hull_of(std::initializer_list<Ellipse> es) {
    EllipseHull h;
    h.ellipses = es;
    return h;
}

} // namespace

TEST_CASE("ellipse recovery from trig coefficients") {
    SUBCASE("worked horizontal ellipse") {
        const Ellipse e = ellipse_from_trig({-1.0, 0.0, 1.25}, {});
        CHECK(e.semi_major == doctest::Approx(1.5).epsilon(1e-14));
        CHECK(e.semi_minor == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(std::abs(e.axis_angle) <= 1e-14);
        // foci consistency: 1.5^2 - 0.5^2 = 2
        CHECK(e.semi_major * e.semi_major - e.semi_minor * e.semi_minor ==
              doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("unit circle") {
        const Ellipse e = ellipse_from_trig({0.0, 0.0, 1.0}, {});
        CHECK(e.semi_major == doctest::Approx(1.0));
        CHECK(e.semi_minor == doctest::Approx(1.0));
        CHECK(e.axis_angle == 0.0);
    }
    SUBCASE("vertical segment at the admissibility boundary") {
        const Ellipse e = ellipse_from_trig({1.0, 0.0, 1.0}, {});
        CHECK(e.semi_major == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(e.semi_minor == 0.0);
        CHECK(e.axis_angle == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(ellipse_from_trig({1.0, 0.0, 0.5}, {}), NotAnEllipse);
}

TEST_CASE("ellipse support worked values") {
    const Ellipse circle{{}, 1.0, 1.0, 0.0};
    for (double theta : {0.0, 0.4, 1.9, 4.4}) CHECK(ellipse_support(circle, theta) ==
                                                    doctest::Approx(1.0).epsilon(1e-14));
    const Ellipse e{{}, 1.5, 0.5, 0.0};
    CHECK(ellipse_support(e, M_PI / 2.0) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(ellipse_support(e, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("hull support") {
    const Ellipse e{{}, 1.5, 0.5, 0.0};
    CHECK(hull_support(hull_of({e}), 0.3) == ellipse_support(e, 0.3));

    const EllipseHull circles = hull_of({Ellipse{{}, 1.0, 1.0, 0.0}, Ellipse{{}, 2.0, 2.0, 0.0}});
    for (double theta : {0.0, 1.0, 2.0}) CHECK(hull_support(circles, theta) ==
                                               doctest::Approx(2.0).epsilon(1e-14));

    EllipseHull points;
    points.isolated_points = {Complex{1.0, 0.0}, Complex{-1.0, 0.0}};
    CHECK(hull_support(points, M_PI / 2.0) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(hull_support(EllipseHull{}, 0.0), EmptyHull);
}

TEST_CASE("trig fit worked values") {
    std::vector<std::pair<double, double>> pts;
    SUBCASE("exact trig data is recovered") {
        for (int i = 0; i < 16; ++i) {
            const double theta = 2.0 * M_PI * i / 16;
            pts.emplace_back(theta, 1.25 - std::cos(2.0 * theta));
        }
        const auto [coeffs, residual] = fit_trig(pts);
        CHECK(coeffs.a_coef == doctest::Approx(-1.0).epsilon(1e-13));
        CHECK(std::abs(coeffs.b_coef) <= 1e-13);
        CHECK(coeffs.c_coef == doctest::Approx(1.25).epsilon(1e-13));
        CHECK(residual <= 1e-12);
    }
    SUBCASE("constant data") {
        for (int i = 0; i < 8; ++i) pts.emplace_back(2.0 * M_PI * i / 8, 1.0);
        const auto [coeffs, residual] = fit_trig(pts);
        CHECK(std::abs(coeffs.a_coef) <= 1e-14);
        CHECK(std::abs(coeffs.b_coef) <= 1e-14);
        CHECK(coeffs.c_coef == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(residual <= 1e-14);
    }
    SUBCASE("a 4-theta component defeats the fit") {
        for (int i = 0; i < 16; ++i) {
            const double theta = 2.0 * M_PI * i / 16;
            pts.emplace_back(theta, std::cos(4.0 * theta) + 2.0);
        }
        const auto [coeffs, residual] = fit_trig(pts);
        (void)coeffs;
        CHECK(residual == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("rank-deficient data is rejected") {
        pts = {{0.0, 1.0}, {0.0, 2.0}, {0.0, 3.0}, {0.0, 4.0}};
        CHECK_THROWS_AS(fit_trig(pts), DegenerateFit);
        CHECK_THROWS_AS(fit_trig({{0.0, 1.0}}), DegenerateFit);
    }
}

TEST_CASE("active partition") {
    SUBCASE("nested circles never switch") {
        const ArcPartition part = active_partition(
            hull_of({Ellipse{{}, 2.0, 2.0, 0.0}, Ellipse{{}, 1.0, 1.0, 0.0}}), 64);
        CHECK(part.breakpoints.empty());
        CHECK(part.distinct_active() == 1);
        CHECK(part.flat_portions() == 0);
    }
    SUBCASE("two equal perpendicular segments cut four corners") {
        const ArcPartition part = active_partition(
            hull_of({Ellipse{{}, 1.0, 0.0, 0.0}, Ellipse{{}, 1.0, 0.0, M_PI / 2.0}}), 128);
        CHECK(part.breakpoints.size() == 4);
        CHECK(part.distinct_active() == 2);
    }
    SUBCASE("the skew-hermitian worked pair gives two active arcs") {
        // predicted segments for H = 4I, Z = diag(-2i, 2i)
        const ArcPartition part = active_partition(
            hull_of({Ellipse{{}, std::sqrt(2.0), 0.0, 3.0 * M_PI / 4.0},
                     Ellipse{{}, std::sqrt(2.0), 0.0, M_PI / 4.0}}),
            720);
        CHECK(part.breakpoints.size() == 4);
        CHECK(part.distinct_active() == 2);
    }
    SUBCASE("non-co-centered hulls are rejected") {
        CHECK_THROWS_AS(active_partition(hull_of({Ellipse{{}, 1.0, 1.0, 0.0},
                                                  Ellipse{{5.0, 0.0}, 1.0, 1.0, 0.0}}),
                                         64),
                        NotCocentered);
    }
    SUBCASE("grid must be large enough") {
        CHECK_THROWS_AS(active_partition(hull_of({Ellipse{{}, 1.0, 1.0, 0.0}}), 4),
                        std::invalid_argument);
    }
}

TEST_CASE("partition is centrally symmetric with an even number of switches") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> len(0.2, 2.0), ang(0.0, M_PI);
    for (int t = 0; t < 30; ++t) {
        EllipseHull h;
        const int m = 2 + static_cast<int>(rng() % 3);
        for (int j = 0; j < m; ++j) {
            const double major = len(rng);
            h.ellipses.push_back({{}, major, major * 0.5, ang(rng)});
        }
        const ArcPartition part = active_partition(h, 360);
        CHECK(part.breakpoints.size() % 2 == 0);
        for (int i = 0; i < 180; ++i) {
            const double theta = 2.0 * M_PI * i / 360;
            CHECK(active_ellipse_index(h, theta) == active_ellipse_index(h, theta + M_PI));
        }
    }
}

TEST_CASE("support squared reproduces the trig form") {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> coef(-2.0, 2.0), lift(0.0, 3.0);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        TrigCoefficients tc{coef(rng), coef(rng), 0.0};
        tc.c_coef = std::hypot(tc.a_coef, tc.b_coef) + lift(rng);
        const Ellipse e = ellipse_from_trig(tc, {});
        for (int i = 0; i < 360; ++i) {
            const double theta = 2.0 * M_PI * i / 360;
            const double s = ellipse_support(e, theta);
            const double want = tc.a_coef * std::cos(2.0 * theta) +
                                tc.b_coef * std::sin(2.0 * theta) + tc.c_coef;
            worst = std::max(worst, std::abs(s * s - want));
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("hull support of centered hulls is pi-periodic") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> len(0.2, 2.0), ang(0.0, M_PI);
    EllipseHull h;
    for (int j = 0; j < 3; ++j) {
        const double major = len(rng);
        h.ellipses.push_back({{}, major, 0.3 * major, ang(rng)});
    }
    for (int i = 0; i < 90; ++i) {
        const double theta = 2.0 * M_PI * i / 90;
        CHECK(std::abs(hull_support(h, theta + M_PI) - hull_support(h, theta)) <= 1e-12);
        CHECK(std::abs(hull_support(h, theta + 2.0 * M_PI) - hull_support(h, theta)) <= 1e-12);
    }
}

TEST_CASE("segment degeneration is continuous") {
    const double r = std::hypot(1.3, -0.4);
    const Ellipse e = ellipse_from_trig({1.3, -0.4, r * (1.0 + 1e-12)}, {});
    CHECK(e.semi_minor <= 2e-6 * e.semi_major);
}
