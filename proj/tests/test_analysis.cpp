#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mirrorlab/analysis.hpp"
#include "mirrorlab/analytic.hpp"
#include "mirrorlab/dynamics.hpp"
#include "mirrorlab/potential.hpp"
#include "support/oracles.hpp"

using namespace mirrorlab;
using analysis::FixedPointKind;
using dynamics::Scenario;
using dynamics::Treatment;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("radiation-only fixed points: saddles at n pi, centers at the minima") {
    auto sc = Scenario::radiation(10.0, 1e9, Treatment::RWA);
    const auto fps = analysis::fixed_points(sc, 0, 3);
    REQUIRE(fps.size() == 8);
    for (std::size_t i = 0; i < fps.size(); ++i) {
        CHECK(std::abs(dynamics::rhs({0.0, fps[i].x, 0.0}, sc)) < 1e-10);
        if (i % 2 == 0) {
            CHECK(fps[i].kind == FixedPointKind::Saddle);
            CHECK(fps[i].manifold_slopes.has_value());
        } else {
            CHECK(fps[i].kind == FixedPointKind::Center);
        }
    }
}

TEST_CASE("friction fixed points: saddle plus stable spiral per well") {
    auto sc = Scenario::friction(10.0, 0.0, 1.0, Treatment::RWA);
    const auto fps = analysis::fixed_points(sc, 4, 4);
    REQUIRE(fps.size() == 2);
    CHECK(fps[0].kind == FixedPointKind::Saddle);
    CHECK(fps[0].x == doctest::Approx(4.0 * kPi));
    CHECK(fps[1].kind == FixedPointKind::StableSpiral);
    CHECK(fps[1].x == doctest::Approx(4.0 * kPi + 0.19739556).epsilon(1e-6));
}

TEST_CASE("classification across the spiral/node boundary") {
    const double xi = 10.0;
    const double x_min = 4.0 * kPi + potential::well_minimum_offset({xi});

    auto spiral = analysis::classify(
        x_min, Scenario::friction(xi, 0.0, 1.0, Treatment::RWA));
    CHECK(spiral.kind == FixedPointKind::StableSpiral);

    auto node = analysis::classify(
        x_min, Scenario::friction(xi, 0.0, 7.0, Treatment::RWA));
    CHECK(node.kind == FixedPointKind::StableNode);

    // f'(x**) = -xi exactly, so the boundary sits at Gamma = 2 sqrt(xi)
    const double gamma_star = 2.0 * std::sqrt(xi);
    CHECK_THROWS_AS(analysis::classify(
                        x_min, Scenario::friction(xi, 0.0, gamma_star, Treatment::RWA)),
                    analysis::DegenerateClassification);

    // bisection on the classification flip lands within 1e-6 of the closed form
    double lo = 6.0, hi = 7.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        bool is_node = false;
        try {
            is_node = analysis::classify(
                          x_min, Scenario::friction(xi, 0.0, mid, Treatment::RWA))
                          .kind == FixedPointKind::StableNode;
        } catch (const analysis::DegenerateClassification&) {
            is_node = true;  // boundary itself
        }
        (is_node ? hi : lo) = mid;
    }
    CHECK(std::abs(0.5 * (lo + hi) - gamma_star) < 1e-6);
}

TEST_CASE("saddle eigenvalues and manifold slopes") {
    const double xi = 10.0;
    auto sc = Scenario::friction(xi, 0.0, 1.0, Treatment::RWA);
    const auto saddle = analysis::classify(4.0 * kPi, sc);
    REQUIRE(saddle.kind == FixedPointKind::Saddle);
    // lambda_pm = -Gamma/2 +- sqrt((Gamma/2)^2 + xi)
    CHECK(saddle.eigenvalues[0].real() == doctest::Approx(2.7015621187).epsilon(1e-3));
    CHECK(saddle.eigenvalues[1].real() == doctest::Approx(-3.7015621187).epsilon(1e-3));

    const auto slopes = analysis::manifolds(saddle, sc);
    CHECK(slopes.unstable == doctest::Approx(2.7015621187).epsilon(1e-6));
    CHECK(slopes.stable == doctest::Approx(-3.7015621187).epsilon(1e-6));

    // conservative case: symmetric slopes +-sqrt(xi)
    auto sc0 = Scenario::radiation(xi, 1e9, Treatment::RWA);
    const auto saddle0 = analysis::classify(4.0 * kPi, sc0);
    const auto slopes0 = analysis::manifolds(saddle0, sc0);
    CHECK(slopes0.unstable == doctest::Approx(std::sqrt(xi)).epsilon(1e-6));
    CHECK(slopes0.stable == doctest::Approx(-std::sqrt(xi)).epsilon(1e-6));

    const auto center = analysis::classify(
        4.0 * kPi + potential::well_minimum_offset({xi}), sc0);
    CHECK_THROWS_AS(analysis::manifolds(center, sc0), std::invalid_argument);
}

TEST_CASE("a trajectory started on the stable line shadows the saddle before leaving") {
    const double xi = 10.0;
    auto sc = Scenario::friction(xi, 0.0, 1.0, Treatment::RWA);
    const auto saddle = analysis::classify(4.0 * kPi, sc);
    const double lam_m = saddle.manifold_slopes->stable;
    const double eps = 1e-6;
    auto traj = dynamics::integrate(sc, {0.0, 4.0 * kPi + eps, lam_m * eps}, 10.0,
                                    {1e-11, 1e-14});
    double dmin = 1e300;
    for (const auto& s : traj.sample(200001))
        dmin = std::min(dmin, std::hypot(s.x - 4.0 * kPi, s.v));
    const auto end = traj.back();
    CHECK(dmin < 1e-7);
    CHECK(std::hypot(end.x - 4.0 * kPi, end.v) > 0.1);
}

TEST_CASE("harmonic-trap fixed point matches the quoted offset") {
    const double xi = 10.0;
    auto sc = Scenario::harmonic_trap(xi, 500.0, 1.0, 10.0, 4.0 * kPi + 0.1, Treatment::RWA);
    const auto fps = analysis::fixed_points(sc, 4, 4);
    REQUIRE(fps.size() == 1);
    const double u_n = fps[0].x - sc.p.x_E;
    CHECK(std::abs(u_n - 0.033175) < 1e-4);
    CHECK(std::abs(dynamics::rhs({0.0, fps[0].x, 0.0}, sc)) < 1e-10);
    CHECK(fps[0].kind == FixedPointKind::StableSpiral);

    // the displaced-Lorentzian cubic seed over-shoots slightly and is unique:
    // enumerate all real roots of the cubic by brute force
    REQUIRE(fps[0].cubic_seed.has_value());
    CHECK(*fps[0].cubic_seed == doctest::Approx(0.0342582).epsilon(1e-4));
    const double w2 = 100.0;
    const std::vector<double> coeffs{-(1.0 - 1.0 / (xi * xi)) / (2.0 * xi * xi * w2),
                                     std::pow(xi, -4.0), 1.0 / (2.0 * w2), 1.0};
    const auto roots = oracles::poly_roots_in(coeffs, -10.0, 10.0);
    int positive = 0;
    for (double r : roots)
        if (r > 0.0) ++positive;
    CHECK(positive == 1);
}

TEST_CASE("bounded-motion criterion and the well-depth speed limit") {
    CHECK_FALSE(analysis::bounded_motion_check(0.1, {50.0}).bounded);
    CHECK(analysis::bounded_motion_check(-0.1, {50.0}).bounded);

    // quadrature oracle for the well depth
    const double xi = 50.0;
    const double x_min = potential::well_minimum_offset({xi});
    const double depth = -oracles::integrate(
        [&](double s) { return -potential::f_rwa(s, {xi}); }, 0.0, x_min, 1e-14);
    const auto bm = analysis::bounded_motion_check(-0.5, {xi});
    CHECK(bm.v0_max == doctest::Approx(std::sqrt(2.0 * depth)).epsilon(1e-6));
    CHECK(bm.v0_max < std::sqrt(kPi));

    // the speed limit approaches sqrt(pi) as the mirror turns opaque
    CHECK(analysis::bounded_motion_check(-0.5, {1e6}).v0_max ==
          doctest::Approx(std::sqrt(kPi)).epsilon(1e-5));
}

TEST_CASE("validity report on the worked low-intensity point") {
    // xi = 6.4, Omega = 1e9: every condition passes with huge margins
    const double xi = 6.4;
    auto sc = Scenario::radiation(xi, 1e9, Treatment::RWA);
    const double x0 = 4.0 * kPi + potential::extrema_table({xi}, 1).wells[0].f_max_x;
    auto traj = dynamics::integrate(sc, {0.0, x0, 0.0}, 20.0, {});
    const auto rep = analysis::validity_report(traj, sc);
    CHECK(rep.physical_ok);
    CHECK(rep.all_sufficient_ok);
    for (const auto& e : rep.conditions) {
        CHECK(e.pass);
        CHECK(e.margin >= 1e6);
    }
    for (const auto& e : rep.rwa_regime) {
        CHECK(e.pass);
        CHECK(e.margin >= 1e6);
    }
}

TEST_CASE("validity margins improve monotonically with Omega") {
    const double xi = 10.0;
    auto sc = Scenario::radiation(xi, 100.0, Treatment::FullDriven);
    auto traj = dynamics::integrate(sc, {0.0, 4.0 * kPi + 0.1, 0.0}, 10.0, {});
    double prev = 0.0;
    for (double Om : {100.0, 200.0, 400.0}) {
        auto sc2 = Scenario::radiation(xi, Om, Treatment::FullDriven);
        const auto rep = analysis::validity_report(traj, sc2);
        double min_margin = 1e300;
        for (const auto& e : rep.conditions) min_margin = std::min(min_margin, e.margin);
        CHECK(min_margin > prev);
        prev = min_margin;
    }
}

TEST_CASE("the much-less-than convention is a factor of ten") {
    const double xi = 6.4;
    auto sc = Scenario::radiation(xi, 1e9, Treatment::RWA);
    auto traj = dynamics::integrate(sc, {0.0, 4.0 * kPi + 0.3, 0.0}, 5.0, {});
    const auto rep = analysis::validity_report(traj, sc);
    for (const auto& e : rep.conditions) CHECK(e.pass == (e.lhs * rep.margin_factor < e.rhs));
    // custom margin factor is honored
    const auto strict = analysis::validity_report(traj, sc, std::nullopt, 1e12);
    CHECK_FALSE(strict.conditions[0].pass);
}

TEST_CASE("rwa-only operations reject the driven treatment") {
    auto sc = Scenario::radiation(10.0, 100.0, Treatment::FullDriven);
    CHECK_THROWS_AS(analysis::fixed_points(sc, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(analysis::classify(kPi, sc), std::invalid_argument);
}
