#ifndef MIRRORLAB_DYNAMICS_HPP
#define MIRRORLAB_DYNAMICS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mirrorlab/params.hpp"
#include "mirrorlab/potential.hpp"

namespace mirrorlab::dynamics {

enum class Kind { RadiationOnly, Friction, HarmonicTrap };
enum class Treatment { FullDriven, RWA };

/// One of the six equations of motion (three physical scenarios x two
/// treatments). In the full driven form the acceleration is
///   [1 + cos(Omega*tau + 2x - 2*delta(x))] * f_rwa(x) - Gamma*v - omega_ho^2 (x - x_E),
/// with terms absent per kind equal to zero; the RWA drops the cosine.
struct Scenario {
    Kind kind = Kind::RadiationOnly;
    Treatment treatment = Treatment::RWA;
    params::NondimParams p;

    static Scenario radiation(double xi, double Omega, Treatment t);
    static Scenario friction(double xi, double Omega, double Gamma, Treatment t);
    static Scenario harmonic_trap(double xi, double Omega, double Gamma,
                                  double omega_ho, double x_E, Treatment t);

    potential::PotentialParams potential_params() const { return {p.xi}; }

    /// Throws std::invalid_argument on a malformed scenario. The harmonic
    /// trap centre must sit inside the resonance window of some well:
    /// |x_E - x_2n(polished)| <= 1/xi^2.
    void validate() const;
};

struct State {
    double tau = 0.0;
    double x = 0.0;
    double v = 0.0;
};

struct Tolerances {
    double rel = 1e-9;
    double abs = 1e-12;
};

enum class IntegrationStatus {
    Completed,
    HalfLineViolation,  // x reached 0: the half-line model broke down
    StepUnderflow,      // step size collapsed: stiffness diagnostic
};

/// Accepted-step record with the quartic continuous-extension coefficients of
/// the embedded 5(4) pair, so states can be sampled anywhere in the step.
/// h is the polynomial scale; span <= h is the valid extent (shorter only on
/// a final step clipped by a diagnostic event).
struct TrajectoryStep {
    double t0 = 0.0;
    double h = 0.0;
    double span = 0.0;
    double cx[5] = {0, 0, 0, 0, 0};
    double cv[5] = {0, 0, 0, 0, 0};
};

class Trajectory {
  public:
    IntegrationStatus status = IntegrationStatus::Completed;
    std::string diagnostic;

    double tau_begin() const;
    double tau_end() const;
    State at(double tau) const;                    // dense-output sample
    std::vector<State> sample(std::size_t n) const;  // n uniform samples
    State back() const;                            // final state
    Trajectory tail(double tau_from) const;        // steps covering tau >= tau_from
    const std::vector<TrajectoryStep>& steps() const { return steps_; }
    std::size_t step_count() const { return steps_.size(); }

  private:
    friend Trajectory integrate(const Scenario&, const State&, double, Tolerances);
    std::vector<TrajectoryStep> steps_;
};

/// Acceleration for the given state under the scenario. The driving cosine is
/// evaluated through the scattering-phase trig pair, never through a wrapped
/// angle, so any 2*pi branch choice of delta yields the identical value.
double rhs(const State& s, const Scenario& sc);

/// Adaptive Dormand-Prince 5(4) with PI step control and dense output.
/// For FullDriven scenarios the step is capped at 2*pi/(20*Omega) so the
/// drive stays resolved. Deterministic for fixed inputs and tolerances.
/// tol.rel must lie in [1e-12, 1e-6]. On a half-line violation or a step
/// underflow the partial trajectory is returned with the diagnostic set.
Trajectory integrate(const Scenario& sc, const State& ic, double tau_end,
                     Tolerances tol = {});

/// Dimensionless energy, defined for RWA treatments only:
/// v^2/2 + V(x) (+ omega_ho^2 (x-x_E)^2 / 2 in the trap).
double energy(const State& s, const Scenario& sc);

struct PeriodEstimate {
    double mean = 0.0;
    double stddev = 0.0;
    int crossings = 0;
};

/// Mean spacing of successive upward crossings of a reference level, located
/// on the dense output to ~1e-10 in tau. The default level is the trajectory
/// time-average, which any bounded recurrent orbit crosses once per period.
/// Returns nothing when fewer than three full recurrences are present
/// (unbounded or non-recurrent motion).
std::optional<PeriodEstimate> period_estimate(const Trajectory& t);
std::optional<PeriodEstimate> period_estimate(const Trajectory& t, double level);

/// Crossing-based period of an externally sampled orbit (linear
/// interpolation between samples).
std::optional<PeriodEstimate> period_from_samples(const std::vector<State>& samples);

}  // namespace mirrorlab::dynamics

#endif  // MIRRORLAB_DYNAMICS_HPP
