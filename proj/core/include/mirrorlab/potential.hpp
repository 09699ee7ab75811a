#ifndef MIRRORLAB_POTENTIAL_HPP
#define MIRRORLAB_POTENTIAL_HPP

#include <vector>

namespace mirrorlab::potential {

/// Dimensionless mirror-opacity parameter set. xi = 4*pi*chi0*k; large xi
/// means a highly reflective mirror, deep potential wells, narrow resonances.
struct PotentialParams {
    double xi = 0.0;
};

/// Cycle-averaged radiation-pressure force,
///   f(x) = -1/2 * [1 - 1/(1 + xi^2 sin^2 x - xi sin 2x)].
/// Periodic with period pi. The denominator is strictly positive for all x.
double f_rwa(double x, const PotentialParams& p);

/// Potential with f = -dV/dx and V(0) = 0, evaluated from the closed form
///   V(x) = x/2 - arctan[(1+xi^2) tan x - xi]/2 - [arctan xi + m*pi]/2,
/// reduced to the fundamental period with the branch taken from the sign of
/// tan. Continuous across branch joints, V(n*pi) = 0, and
/// -pi/2 < V(x) <= 0 for all x >= 0. Requires x >= 0.
double v_rwa(double x, const PotentialParams& p);

/// In-well offset of the potential minimum: x_n** = n*pi + atan(2/xi).
/// This is the exact nonzero root of f within a well.
double well_minimum_offset(const PotentialParams& p);

/// V at a potential minimum (the well depth is its absolute value).
double well_minimum_value(const PotentialParams& p);

/// Slope of the sawtooth interpolant, m+ = -V(2/xi)/(pi - 2/xi), close to 1/2
/// for large xi.
double sawtooth_slope(const PotentialParams& p);

/// Per-well critical points of V and f, seeded analytically and polished by
/// bracketed root-finding of tan(2x) = 2/xi (f extrema) and f = 0 (V minima).
struct ExtremaTable {
    struct Well {
        int n = 0;
        double v_max_x = 0, v_max = 0;  // maximizer of V at n*pi, value 0
        double v_min_x = 0, v_min = 0;  // minimizer of V (zero of f)
        double f_max_x = 0, f_max = 0;  // maximizer of f near n*pi + 1/xi
        double f_min_x = 0, f_min = 0;  // minimizer of f near (n+1/2)*pi + 1/xi
    };
    std::vector<Well> wells;
    bool analytic_seeds = true;  // false below xi = 5: pure numeric bracketing
};
ExtremaTable extrema_table(const PotentialParams& p, int n_max);

/// Sawtooth interpolant of V for large xi (intended xi >= 50): flat top on
/// [n*pi, n*pi+1/xi], flat bottom V(2/xi) on (n*pi+1/xi, n*pi+2/xi], linear
/// rise with slope m+ back to zero at (n+1)*pi. Values exactly at segment
/// joints follow the right-limit convention.
double v_sawtooth(double x, const PotentialParams& p);

/// Piecewise-constant force of the sawtooth: 0 on (n*pi, n*pi+2/xi) and -m+
/// on (n*pi+2/xi, (n+1)*pi), with the right-limit convention at joints.
double f_piecewise(double x, const PotentialParams& p);

/// Displaced-Lorentzian approximation of f around a force maximizer:
///   f(x) ~ -1/2 + (1/(2 xi^2)) / (u^2 + xi^-4), u = x - (m*pi + 1/xi).
/// The flag is true on the window -1/xi < u < 1/xi where the approximation
/// holds to a few percent for xi >= 10.
struct LorentzianForce {
    double value = 0.0;
    bool valid = false;
};
LorentzianForce f_lorentzian(double x, const PotentialParams& p);

}  // namespace mirrorlab::potential

#endif  // MIRRORLAB_POTENTIAL_HPP
