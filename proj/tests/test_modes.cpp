#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mirrorlab/modes.hpp"
#include "support/oracles.hpp"

using namespace mirrorlab;
using modes::ModeParams;

namespace {
constexpr double kPi = std::numbers::pi;
const double kFree = std::sqrt(2.0 / kPi);

double wrap_pi(double a) {
    double w = std::remainder(a, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}
}  // namespace

TEST_CASE("transparent mirror collapses to the free half-line mode") {
    ModeParams p{2.0, 0.0};
    for (double q : {0.3, 1.7, 4.0, 12.9}) {
        const auto m = modes::eval_mode(q, p);
        CHECK(m.L == doctest::Approx(kFree).epsilon(1e-15));
        CHECK(m.delta == doctest::Approx(wrap_pi(p.k * q)).epsilon(1e-12));
    }
}

TEST_CASE("amplitude peaks near resonance positions") {
    // chi0 = 10 m, k = 1/m: xi = 40 pi
    ModeParams p{1.0, 10.0};
    const double xi = p.xi();
    const auto table = modes::resonance_table(p, 3);
    for (double peak : table.peak_values)
        CHECK(peak == doctest::Approx(kFree * xi).epsilon(0.01));
}

TEST_CASE("inside amplitude dominates at resonance and vanishes off resonance") {
    ModeParams p{100.0, 1.0};  // xi = 400 pi
    const double xi = p.xi();
    const int n = 4;
    const double q_res = (n * kPi + 1.0 / xi) / p.k;
    const double q_anti = (n + 0.5) * kPi / p.k;
    const double inside_res = modes::eval_mode(q_res, p).L;
    const double inside_anti = modes::eval_mode(q_anti, p).L;
    CHECK(inside_res / kFree > 100.0);
    CHECK(inside_anti / kFree < 0.01);
    // oracle: the resonant q sits within one HWHM of the dense-grid argmax of L
    const double q_star = oracles::grid_argmax(
        [&](double q) { return modes::eval_mode(q, p).L; }, n * kPi / p.k,
        (n + 0.5) * kPi / p.k, 100001);
    CHECK(std::abs(q_res - q_star) < 1.0 / (xi * xi * p.k));
}

TEST_CASE("trig pair is normalized and the mode is continuous at the mirror") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uq(0.05, 30.0);
    std::uniform_real_distribution<double> uxi(0.0, 120.0);
    for (int i = 0; i < 1000; ++i) {
        const double q = uq(rng);
        const double xi = uxi(rng);
        ModeParams p{1.7, xi / (4.0 * kPi * 1.7)};
        const auto m = modes::eval_mode(q, p);
        const double norm = m.sin_delta * m.sin_delta + m.cos_delta * m.cos_delta;
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(m.profile_inside(q) == doctest::Approx(kFree * m.sin_delta).epsilon(1e-12));
        CHECK(m.profile(q) == doctest::Approx(m.profile_outside(q)).epsilon(1e-10));
        CHECK(m.L > 0.0);
    }
}

TEST_CASE("the in-cavity denominator stays positive") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> ux(0.0, 40.0);
    int violations = 0;
    for (double xi : {0.5, 1.0, 6.4, 10.0, 50.0, 126.0}) {
        for (int i = 0; i < 167000; ++i) {
            const double kq = ux(rng);
            const double s = std::sin(kq);
            if (!(1.0 + xi * xi * s * s - xi * std::sin(2.0 * kq) > 0.0)) ++violations;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("transmissivity and its inverse") {
    CHECK(modes::transmissivity(0.0).T == doctest::Approx(1.0));
    CHECK(modes::transmissivity(0.0).R == doctest::Approx(0.0));
    CHECK(modes::xi_from_reflectivity(0.91) == doctest::Approx(6.4).epsilon(0.01));
    CHECK(modes::transmissivity(50.0).R == doctest::Approx(0.9984).epsilon(1e-4));
    CHECK_THROWS_AS(modes::xi_from_reflectivity(1.0), std::overflow_error);
    // round trip
    for (double xi : {0.7, 6.4, 50.0}) {
        const double R = modes::transmissivity(xi).R;
        CHECK(modes::xi_from_reflectivity(R) == doctest::Approx(xi).epsilon(1e-12));
    }
}

TEST_CASE("resonance table: interleaving, spacing, polish quality") {
    ModeParams p{1.0, 10.0};  // Fig-1 parameters, xi = 40 pi
    const double xi = p.xi();
    const auto table = modes::resonance_table(p, 4);
    CHECK(table.analytic_seeds);
    CHECK(table.hwhm_kq == doctest::Approx(1.0 / (xi * xi)));
    CHECK(table.hwhm_q == doctest::Approx(1.0 / (xi * xi * p.k)));
    for (std::size_t n = 0; n < 4; ++n) {
        CHECK(table.maximizers_q[n] < table.minimizers_q[n]);
        if (n > 0) {
            CHECK(table.minimizers_q[n - 1] < table.maximizers_q[n]);
            const double spacing = table.maximizers_q[n] - table.maximizers_q[n - 1];
            CHECK(spacing == doctest::Approx(kPi / p.k).epsilon(0.01));
        }
        // seed positions k q_2n ~ n pi + 1/xi
        CHECK(table.maximizers_q[n] * p.k ==
              doctest::Approx(n * kPi + 1.0 / xi).epsilon(1e-3));
        // polished positions match the dense-grid argmax oracle to 1e-6 * (pi/k)
        const double lo = n * kPi / p.k + 1e-7;
        const double q_star = oracles::grid_argmax(
            [&](double q) { return modes::eval_mode(q, p).L; }, lo, lo + 0.5 * kPi / p.k, 100001);
        CHECK(std::abs(table.maximizers_q[n] - q_star) < 1e-6 * kPi / p.k);
    }
    // low-opacity fallback flags itself
    CHECK_FALSE(modes::resonance_table({1.0, 0.1}, 2).analytic_seeds);
}

TEST_CASE("Lorentzian approximation of the squared amplitude") {
    ModeParams p{1.0, 50.0 / (4.0 * kPi)};  // xi = 50
    const double xi = p.xi();
    const auto table = modes::resonance_table(p, 3);
    const double q2 = table.maximizers_q[2];

    const auto at_peak = modes::lorentzian_lk_sq(q2, p, 2);
    CHECK(at_peak.valid);
    CHECK(at_peak.value == doctest::Approx(2.0 / kPi * xi * xi).epsilon(0.01));

    // half the peak one half-width away
    const double q_h = q2 + 1.0 / (xi * xi * p.k);
    const double exact_peak = modes::eval_mode(q2, p).L;
    const double lk_h = modes::eval_mode(q_h, p).L;
    CHECK(lk_h * lk_h == doctest::Approx(0.5 * exact_peak * exact_peak).epsilon(0.02));

    // sweep-measured error over the flagged window: below 5% for |v| <= 0.35,
    // growing to ~8% at the |v| = 0.5 edge
    for (int i = -999; i <= 999; ++i) {
        const double v = 0.5 * i / 1000.0;
        const double q = q2 + v / p.k;
        const auto lor = modes::lorentzian_lk_sq(q, p, 2);
        CHECK(lor.valid);
        const double exact = modes::eval_mode(q, p).L;
        const double rel = std::abs(lor.value - exact * exact) / (exact * exact);
        CHECK(rel < 0.085);
        if (std::abs(v) <= 0.35) CHECK(rel < 0.05);
    }
    CHECK_FALSE(modes::lorentzian_lk_sq(q2 + 0.6 / p.k, p, 2).valid);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(modes::eval_mode(0.0, ModeParams{1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(modes::eval_mode(std::nan(""), ModeParams{1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(modes::eval_mode(1.0, ModeParams{-1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(modes::transmissivity(-0.1), std::domain_error);
    CHECK_THROWS_AS(modes::resonance_table(ModeParams{1.0, 0.0}, 2), std::invalid_argument);
}
