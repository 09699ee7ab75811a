#ifndef MIRRORLAB_MODES_HPP
#define MIRRORLAB_MODES_HPP

#include <vector>

namespace mirrorlab::modes {

/// Fixed-mirror + thin-movable-mirror cavity mode parameters.
struct ModeParams {
    double k = 0.0;     // wave number (1/m), > 0
    double chi0 = 0.0;  // coupling length of the thin mirror (m), >= 0
    double xi() const { return 4.0 * 3.141592653589793238462643383279502884 * chi0 * k; }
};

/// The scattering phase enters every consumer through sin/cos only, so the
/// algebraic pair is the primary representation; it satisfies
/// sin^2 + cos^2 = 1 exactly up to rounding.
///   sin(delta) = sin(kq)/sqrt(D),  cos(delta) = (cos(kq) - xi sin(kq))/sqrt(D),
/// with D = 1 + xi^2 sin^2(kq) - xi sin(2kq).
struct DeltaTrig {
    double sin_delta = 0.0;
    double cos_delta = 1.0;
};
DeltaTrig delta_trig(double kq, double xi);

/// Principal value of the scattering phase in (-pi, pi].
double delta_principal(double kq, double xi);

/// Single-mode quantities at mirror position q: in-cavity amplitude L,
/// scattering phase delta, and the piecewise spatial profile
///   V(x) = L sin(kx)                     for 0 <= x <= q,
///   V(x) = sqrt(2/pi) sin(k(x-q)+delta)  for x > q,
/// continuous at x = q since L sin(kq) = sqrt(2/pi) sin(delta) identically.
struct ModeEvaluation {
    double L = 0.0;      // in-cavity amplitude, > 0 for all q
    double delta = 0.0;  // principal value in (-pi, pi]
    double sin_delta = 0.0;
    double cos_delta = 1.0;
    double k = 0.0;
    double q = 0.0;

    double profile_inside(double x) const;
    double profile_outside(double x) const;
    double profile(double x) const;
};
ModeEvaluation eval_mode(double q, const ModeParams& p);

/// Transmissivity of the thin mirror, T = 1/(1 + (xi/2)^2), R = 1 - T.
struct Transmission {
    double T = 1.0;
    double R = 0.0;
};
Transmission transmissivity(double xi);

/// Inverse map xi = 2 sqrt(R/(1-R)). A perfect mirror (R = 1) has no finite xi.
double xi_from_reflectivity(double R);

/// Resonance structure of L(q): positions where the drive frequency matches a
/// cavity resonance (maximizers q_2n) interleaved with minimizers q_2n+1.
/// Extremizers solve tan(2kq) = 2/xi; seeds kq ~ n*pi/2 + 1/xi are polished by
/// bracketed Newton. Peak L(q_2n) ~ sqrt(2/pi)*xi, and each peak has
/// half-width-at-half-maximum 1/xi^2 in kq units (1/(xi^2 k) in q units).
struct ResonanceTable {
    std::vector<double> maximizers_q;
    std::vector<double> minimizers_q;
    std::vector<double> peak_values;
    double hwhm_kq = 0.0;
    double hwhm_q = 0.0;
    bool analytic_seeds = true;  // false below xi = 5 (numeric-only fallback)
};
ResonanceTable resonance_table(const ModeParams& p, int n_max);

/// Lorentzian approximation of L(q)^2 around the n-th resonance,
///   L^2 ~ (2/(pi xi^2)) / (v^2 + 1/xi^4), v = k(q - q_2n).
/// Valid flag is true on |v| < 0.5 (well inside the |v| << 3/2 regime).
struct LorentzianLkSq {
    double value = 0.0;
    bool valid = false;
};
LorentzianLkSq lorentzian_lk_sq(double q, const ModeParams& p, int n);

}  // namespace mirrorlab::modes

#endif  // MIRRORLAB_MODES_HPP
