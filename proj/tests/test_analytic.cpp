#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mirrorlab/analytic.hpp"
#include "mirrorlab/dynamics.hpp"
#include "mirrorlab/potential.hpp"

using namespace mirrorlab;
using analytic::SegmentKind;
using dynamics::Scenario;
using dynamics::Treatment;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("pasted orbit: period identity and segment structure") {
    const double xi = 50.0;
    potential::PotentialParams p{xi};
    const double m_plus = potential::sawtooth_slope(p);
    const double v0 = 0.9;
    auto orbit = analytic::rwa_pasted(p, 4, v0, 0.0, 20.0);
    REQUIRE(orbit.period.has_value());
    CHECK(*orbit.period == 2.0 * v0 / m_plus + 2.0 / (xi * v0));

    // first cycle: drift right, flight, drift left, bounce (exact durations)
    const auto& segs = orbit.segments();
    REQUIRE(segs.size() >= 4);
    CHECK(segs[0].kind == SegmentKind::UniformRight);
    CHECK(segs[0].tau1 - segs[0].tau0 == doctest::Approx(1.0 / (xi * v0)));
    CHECK(segs[1].kind == SegmentKind::ParabolicFall);
    CHECK(segs[1].tau1 - segs[1].tau0 == doctest::Approx(2.0 * v0 / m_plus));
    CHECK(segs[2].kind == SegmentKind::UniformLeft);
    CHECK(segs[3].kind == SegmentKind::Bounce);

    // continuity of x everywhere; x' jumps only at the bounce, flipping sign
    const double eps = 1e-9;
    for (std::size_t i = 0; i + 1 < segs.size() && segs[i].tau1 < 20.0 - eps; ++i) {
        const double tj = segs[i].tau1;
        if (tj <= orbit.tau_begin() + eps) continue;
        CHECK(orbit.x(tj - eps) == doctest::Approx(orbit.x(tj + eps)).epsilon(1e-6));
        if (segs[i + 1].kind == SegmentKind::Bounce) {
            CHECK(orbit.v(tj - eps) == doctest::Approx(-v0).epsilon(1e-6));
            CHECK(orbit.v(tj + eps) == doctest::Approx(v0).epsilon(1e-6));
        }
    }
}

TEST_CASE("pasted period is convex in the launch speed with the known minimum") {
    const double xi = 50.0;
    potential::PotentialParams p{xi};
    const double m_plus = potential::sawtooth_slope(p);
    const double v_opt = std::sqrt(m_plus / xi);
    auto period = [&](double v0) { return 2.0 * v0 / m_plus + 2.0 / (xi * v0); };

    const double P_min = period(v_opt);
    CHECK(P_min == doctest::Approx(4.0 / std::sqrt(m_plus * xi)));
    CHECK(P_min == doctest::Approx(4.0 * std::sqrt(2.0 / xi)).epsilon(0.10));
    for (double f : {0.3, 0.6, 1.5, 3.0})
        CHECK(period(v_opt * f) > P_min);
    // sampled convexity
    for (double v0 = 0.1; v0 < 1.5; v0 += 0.05) {
        const double h = 0.01;
        CHECK(period(v0 - h) + period(v0 + h) - 2.0 * period(v0) > 0.0);
    }

    // the event detector recovers the period of the sampled orbit
    auto orbit = analytic::rwa_pasted(p, 4, v_opt, 0.0, 10.0);
    const auto pe = dynamics::period_from_samples(orbit.sample(40001));
    REQUIRE(pe.has_value());
    CHECK(pe->mean == doctest::Approx(*orbit.period).epsilon(1e-4));
}

TEST_CASE("launch speeds beyond the well depth are rejected") {
    potential::PotentialParams p{50.0};
    const double v_cap = std::sqrt(2.0 * std::abs(potential::v_rwa(2.0 / 50.0, p)));
    CHECK_NOTHROW(analytic::rwa_pasted(p, 4, 0.99 * v_cap, 0.0, 5.0));
    CHECK_THROWS_AS(analytic::rwa_pasted(p, 4, 1.01 * v_cap, 0.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(analytic::rwa_pasted(p, 4, 0.0, 0.0, 5.0), std::invalid_argument);
}

TEST_CASE("energy matching of initial speeds") {
    potential::PotentialParams p{50.0};
    const double floor_v = potential::v_rwa(2.0 / 50.0, p);
    CHECK(analytic::ic_match(floor_v, p) == 0.0);
    CHECK_THROWS_AS(analytic::ic_match(floor_v - 0.01, p), std::invalid_argument);
    // round trip under the sawtooth: E = v^2/2 + V(2/xi)
    for (double E : {-1.2, -0.78, -0.2}) {
        const double v = analytic::ic_match(E, p);
        CHECK(0.5 * v * v + floor_v == doctest::Approx(E).epsilon(1e-12));
    }
}

TEST_CASE("pasted orbit tracks the numeric solution at matched energy") {
    const double xi = 50.0;
    potential::PotentialParams p{xi};
    auto sc = Scenario::radiation(xi, 1e9, Treatment::RWA);
    const dynamics::State ic{0.0, 4.0 * kPi + 1.0 / xi, 0.0};
    const double E = dynamics::energy(ic, sc);
    const double v0 = analytic::ic_match(E, p);
    auto pasted = analytic::rwa_pasted(p, 4, v0, 0.0, 15.0);
    auto traj = dynamics::integrate(sc, ic, 15.0, {});
    double dmax = 0.0;
    for (int i = 0; i <= 40000; ++i) {
        const double tau = 2.0 * *pasted.period * i / 40000.0;
        dmax = std::max(dmax, std::abs(traj.at(tau).x - pasted.x(tau)));
    }
    CHECK(dmax < 0.1);
}

TEST_CASE("damped pasted orbit") {
    const double xi = 50.0;
    potential::PotentialParams p{xi};
    auto sc = Scenario::radiation(xi, 1e9, Treatment::RWA);
    const dynamics::State ic{0.0, 4.0 * kPi + 1.0 / xi, 0.0};
    const double v0 = analytic::ic_match(dynamics::energy(ic, sc), p);

    SUBCASE("tracks the numeric damped solution in the spiral regime") {
        auto scf = Scenario::friction(xi, 0.0, 1.0, Treatment::RWA);
        auto traj = dynamics::integrate(scf, ic, 10.0, {});
        auto pasted = analytic::friction_pasted(p, 1.0, {0.0, ic.x, v0}, 10.0);
        double dmax = 0.0;
        for (int i = 0; i <= 40000; ++i) {
            const double tau = 10.0 * i / 40000.0;
            dmax = std::max(dmax, std::abs(traj.at(tau).x - pasted.x(tau)));
        }
        CHECK(dmax < 0.15);
    }

    SUBCASE("drifts toward the potential minimizer") {
        auto pasted = analytic::friction_pasted(p, 1.0, {0.0, ic.x, v0}, 60.0);
        const double x_star = 4.0 * kPi + potential::well_minimum_offset(p);
        CHECK(std::abs(pasted.x(60.0) - x_star) < 0.03);
        CHECK(std::abs(pasted.v(60.0)) < 1e-6);
    }

    SUBCASE("reduces to the frictionless orbit as Gamma -> 0") {
        auto ideal = analytic::rwa_pasted(p, 4, v0, 0.0, 5.0);
        auto tiny = analytic::friction_pasted(p, 1e-6, {0.0, ic.x, v0}, 5.0);
        double dmax = 0.0;
        for (int i = 0; i <= 20000; ++i) {
            const double tau = *ideal.period * i / 20000.0;
            dmax = std::max(dmax, std::abs(tiny.x(tau) - ideal.x(tau)));
        }
        CHECK(dmax < 1e-3);
    }

    SUBCASE("x and x' are continuous across every interior joint") {
        auto pasted = analytic::friction_pasted(p, 1.0, {0.0, ic.x, v0}, 10.0);
        const double eps = 1e-10;
        for (const auto& s : pasted.segments()) {
            if (s.tau1 <= eps || s.tau1 >= 10.0 - eps) continue;
            CHECK(pasted.x(s.tau1 - eps) == doctest::Approx(pasted.x(s.tau1 + eps)).epsilon(1e-7));
            const double vl = pasted.v(s.tau1 - eps);
            const double vr = pasted.v(s.tau1 + eps);
            // velocity continuous except across a bounce, which flips the sign
            CHECK(std::abs(std::abs(vl) - std::abs(vr)) < 1e-6);
        }
    }

    SUBCASE("rejects zero damping and energy overflow") {
        CHECK_THROWS_AS(analytic::friction_pasted(p, 0.0, {0.0, ic.x, v0}, 5.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(analytic::friction_pasted(p, 1.0, {0.0, ic.x, 3.0}, 5.0),
                        std::invalid_argument);
    }
}

TEST_CASE("harmonic steady-state estimate") {
    potential::PotentialParams p{10.0};

    SUBCASE("far off resonance: the worked parameter point") {
        const auto ss = analytic::harmonic_steady_state(p, 500.0, 1.0, 10.0);
        CHECK(ss.Omega == 500.0);
        CHECK(ss.amplitude == doctest::Approx(1.9808e-4).epsilon(1e-3));
        CHECK(ss.offset == doctest::Approx((100.0 - 1.0) / (2.0 * 100.0)));
        CHECK(ss.phase > 0.0);
        CHECK(ss.phase < kPi);
    }

    SUBCASE("on resonance the amplitude is (xi^2-1)/(2 Gamma Omega)") {
        const auto ss = analytic::harmonic_steady_state(p, 500.0, 1.0, 500.0);
        CHECK(ss.amplitude == doctest::Approx((100.0 - 1.0) / (2.0 * 1.0 * 500.0)));
        CHECK(ss.phase == doctest::Approx(kPi / 2.0));
    }

    SUBCASE("phase stays in (0, pi) across the sweep") {
        for (double Om : {20.0, 100.0, 499.0, 500.0, 501.0, 2000.0}) {
            const auto ss = analytic::harmonic_steady_state(p, Om, 0.7, 500.0);
            CHECK(ss.phase > 0.0);
            CHECK(ss.phase < kPi);
        }
    }
}
