#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mirrorlab/params.hpp"

using namespace mirrorlab;
using params::Cantilever;
using params::Laser;
using params::PhysicalParams;

namespace {

// gold-coated AFM cantilever + HeNe line used throughout
Cantilever reference_cantilever() {
    Cantilever c;
    c.length = 223e-6;
    c.width = 22e-6;
    c.thickness = 512e-9;
    c.spring_constant = 0.01;
    c.mode_frequency = 2.0 * std::numbers::pi * 8700.0;
    c.damping_rate = 30.0;
    return c;
}

Laser reference_laser() {
    Laser l;
    l.wavelength = 633e-9;
    l.max_power = 1.0;
    l.reflectivity = 0.91;
    return l;
}

}  // namespace

TEST_CASE("cantilever pipeline reproduces the worked values") {
    const auto rep = params::cantilever_pipeline(reference_cantilever(), reference_laser());
    CHECK(rep.effective_mass == doctest::Approx(3.3e-12).epsilon(0.02));
    CHECK(rep.physical.M0 == doctest::Approx(6.8e-6).epsilon(0.02));
    CHECK(rep.physical.k_N0 * params::speed_of_light == doctest::Approx(3e15).epsilon(0.02));
    CHECK(rep.thinning_factor == 100.0);
    CHECK_FALSE(rep.lines.empty());
    // quoted thickness is ~lambda, so thinning by 100 is required and the
    // unthinned sheet should warn
    CHECK(rep.warnings.empty());
    const auto thick = params::cantilever_pipeline(reference_cantilever(), reference_laser(), 1.0);
    CHECK_FALSE(thick.warnings.empty());
}

TEST_CASE("mode frequency scaling of the effective mass") {
    auto c = reference_cantilever();
    const double m1 = params::cantilever_pipeline(c, reference_laser()).effective_mass;
    c.mode_frequency *= 2.0;
    const double m2 = params::cantilever_pipeline(c, reference_laser()).effective_mass;
    CHECK(m2 == doctest::Approx(0.25 * m1).epsilon(1e-12));
}

TEST_CASE("nondimensionalization at the reference point") {
    const auto rep = params::cantilever_pipeline(reference_cantilever(), reference_laser());
    PhysicalParams p = rep.physical;
    p.g0 = 1e-6;
    const auto nd = params::nondimensionalize(p);

    CHECK(nd.Delta == doctest::Approx(3.8e12 * p.g0).epsilon(0.02));
    CHECK(nd.Omega == doctest::Approx(1562.6 / p.g0).epsilon(0.02));
    CHECK(nd.xi == doctest::Approx(6.4).epsilon(0.01));
    CHECK(nd.Omega == doctest::Approx(2.0 * nd.omega0 / nd.Delta).epsilon(1e-15));
    CHECK(nd.Gamma / nd.Omega == doctest::Approx(5.04e-15).epsilon(0.05));
    CHECK(nd.omega_ho / nd.Omega == doctest::Approx(9.18e-12).epsilon(0.05));

    SUBCASE("doubling g0 halves Omega and doubles Delta") {
        PhysicalParams p2 = p;
        p2.g0 *= 2.0;
        const auto nd2 = params::nondimensionalize(p2);
        CHECK(nd2.Delta == doctest::Approx(2.0 * nd.Delta).epsilon(1e-12));
        CHECK(nd2.Omega == doctest::Approx(0.5 * nd.Omega).epsilon(1e-12));
    }
}

TEST_CASE("round trip physical -> nondim -> physical") {
    PhysicalParams p;
    p.chi0 = 1.02e-7;
    p.M0 = 6.82e-6;
    p.k_N0 = 9.93e6;
    p.g0 = 7.7e-7;
    p.gamma = 2.05e-4;
    p.k_ho = 20.4;
    p.q_E = 1.27e-6;
    const auto nd = params::nondimensionalize(p);
    const auto back = params::redimensionalize(nd, p.M0);
    CHECK(back.chi0 == doctest::Approx(p.chi0).epsilon(1e-12));
    CHECK(back.k_N0 == doctest::Approx(p.k_N0).epsilon(1e-12));
    CHECK(back.g0 == doctest::Approx(p.g0).epsilon(1e-12));
    CHECK(back.gamma == doctest::Approx(p.gamma).epsilon(1e-12));
    CHECK(back.k_ho == doctest::Approx(p.k_ho).epsilon(1e-12));
    CHECK(back.q_E == doctest::Approx(p.q_E).epsilon(1e-12));
}

TEST_CASE("dimensional force prefactor ties the two forms together") {
    PhysicalParams p;
    p.chi0 = 1.02e-7;
    p.M0 = 6.82e-6;
    p.k_N0 = 9.93e6;
    p.g0 = 7.7e-7;
    const auto nd = params::nondimensionalize(p);
    const double lhs = params::radiation_force_prefactor(p);
    const double rhs = p.M0 * nd.Delta * nd.Delta / p.k_N0;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("monotonicity in the control parameters") {
    PhysicalParams p;
    p.chi0 = 1e-7;
    p.M0 = 6.8e-6;
    p.k_N0 = 9.9e6;
    p.g0 = 1e-6;
    double prev_Omega = std::numeric_limits<double>::infinity();
    for (double g0 : {1e-7, 3e-7, 1e-6, 3e-6}) {
        p.g0 = g0;
        const double Om = params::nondimensionalize(p).Omega;
        CHECK(Om < prev_Omega);
        prev_Omega = Om;
    }
    double prev_xi = 0.0;
    for (double chi0 : {1e-8, 1e-7, 1e-6}) {
        p.chi0 = chi0;
        const double xi = params::nondimensionalize(p).xi;
        CHECK(xi > prev_xi);
        prev_xi = xi;
    }
}

TEST_CASE("laser-power bound on the field strength") {
    const auto c = reference_cantilever();
    auto l = reference_laser();
    CHECK(params::g0_bound(l, c) == doctest::Approx(5.2e-7).epsilon(0.02));
    l.max_power = 0.0;
    CHECK(params::g0_bound(l, c) == 0.0);
    l.max_power = 4.0;
    CHECK(params::g0_bound(l, c) ==
          doctest::Approx(2.0 * params::g0_bound(Laser{633e-9, 1.0, 0.0}, c)).epsilon(1e-12));
}

TEST_CASE("derivation report lists the dimensionless set") {
    PhysicalParams p;
    p.chi0 = 1.02e-7;
    p.M0 = 6.82e-6;
    p.k_N0 = 9.93e6;
    p.g0 = 7.7e-7;
    const auto text = params::derivation_report(p);
    CHECK(text.find("xi") != std::string::npos);
    CHECK(text.find("Omega") != std::string::npos);
    CHECK(text.find("Delta") != std::string::npos);
    CHECK(text.find("rad/s") != std::string::npos);
}

TEST_CASE("missing required fields raise") {
    PhysicalParams p;
    p.chi0 = 1e-7;
    p.M0 = 6.8e-6;
    p.k_N0 = 9.9e6;
    p.g0 = 0.0;  // missing
    CHECK_THROWS_AS(params::nondimensionalize(p), std::invalid_argument);
    p.g0 = 1e-6;
    p.M0 = 0.0;
    CHECK_THROWS_AS(params::nondimensionalize(p), std::invalid_argument);

    params::NondimParams nd;  // no dimensional anchors
    nd.xi = 10.0;
    CHECK_THROWS_AS(params::redimensionalize(nd, 6.8e-6), std::invalid_argument);
    nd.Delta = 3.8e6;
    nd.omega0 = 3e15;
    CHECK_THROWS_AS(params::redimensionalize(nd, 0.0), std::invalid_argument);
    CHECK_NOTHROW(params::redimensionalize(nd, 6.8e-6));
}
