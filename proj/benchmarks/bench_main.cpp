#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "mirrorlab/analytic.hpp"
#include "mirrorlab/dynamics.hpp"
#include "mirrorlab/modes.hpp"
#include "mirrorlab/potential.hpp"

namespace {

constexpr double kPi = std::numbers::pi;
using namespace mirrorlab;

void BM_force_eval(benchmark::State& state) {
    const potential::PotentialParams p{50.0};
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(potential::f_rwa(x, p));
        x += 1e-3;
    }
}
BENCHMARK(BM_force_eval);

void BM_potential_eval(benchmark::State& state) {
    const potential::PotentialParams p{50.0};
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(potential::v_rwa(x, p));
        x += 1e-3;
    }
}
BENCHMARK(BM_potential_eval);

void BM_mode_eval(benchmark::State& state) {
    const modes::ModeParams p{1.0, 10.0};
    double q = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(modes::eval_mode(q, p).L);
        q += 1e-3;
    }
}
BENCHMARK(BM_mode_eval);

void BM_rhs_driven(benchmark::State& state) {
    const auto sc = dynamics::Scenario::radiation(10.0, 250.0, dynamics::Treatment::FullDriven);
    dynamics::State s{0.0, 4.0 * kPi + 0.1, 0.3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(dynamics::rhs(s, sc));
        s.tau += 1e-4;
    }
}
BENCHMARK(BM_rhs_driven);

void BM_integrate_bounded_rwa(benchmark::State& state) {
    const auto sc = dynamics::Scenario::radiation(50.0, 1e9, dynamics::Treatment::RWA);
    const dynamics::State ic{0.0, 4.0 * kPi + 0.02, 0.0};
    for (auto _ : state) {
        auto traj = dynamics::integrate(sc, ic, 20.0);
        benchmark::DoNotOptimize(traj.step_count());
    }
}
BENCHMARK(BM_integrate_bounded_rwa);

void BM_integrate_driven(benchmark::State& state) {
    const auto sc = dynamics::Scenario::radiation(10.0, 250.0, dynamics::Treatment::FullDriven);
    const dynamics::State ic{0.0, 4.0 * kPi + 0.1, 0.0};
    for (auto _ : state) {
        auto traj = dynamics::integrate(sc, ic, 5.0);
        benchmark::DoNotOptimize(traj.step_count());
    }
}
BENCHMARK(BM_integrate_driven);

void BM_dense_sampling(benchmark::State& state) {
    const auto sc = dynamics::Scenario::radiation(50.0, 1e9, dynamics::Treatment::RWA);
    const auto traj = dynamics::integrate(sc, {0.0, 4.0 * kPi + 0.02, 0.0}, 20.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(traj.sample(4096).back().x);
    }
}
BENCHMARK(BM_dense_sampling);

void BM_friction_pasted(benchmark::State& state) {
    const potential::PotentialParams p{50.0};
    for (auto _ : state) {
        auto orbit = analytic::friction_pasted(p, 1.0, {0.0, 4.0 * kPi + 0.02, 1.2}, 20.0);
        benchmark::DoNotOptimize(orbit.segments().size());
    }
}
BENCHMARK(BM_friction_pasted);

}  // namespace

BENCHMARK_MAIN();
