#ifndef MIRRORLAB_ROOT_FIND_HPP
#define MIRRORLAB_ROOT_FIND_HPP

#include <cmath>
#include <stdexcept>

namespace mirrorlab {

/// Newton iteration safeguarded by bisection on a bracketing interval.
/// f(lo) and f(hi) must have opposite signs. Falls back to bisection whenever
/// the Newton step leaves the bracket or fails to shrink it fast enough.
template <class F, class DF>
double find_root_newton(F&& f, DF&& df, double lo, double hi,
                        double xtol = 1e-14, double ftol = 1e-13,
                        int max_iter = 200) {
    double fl = f(lo);
    double fh = f(hi);
    if (fl == 0.0) return lo;
    if (fh == 0.0) return hi;
    if ((fl > 0.0) == (fh > 0.0))
        throw std::invalid_argument("find_root_newton: endpoints do not bracket a root");
    if (fl > 0.0) { std::swap(lo, hi); }  // orient so f(lo) < 0

    double root = 0.5 * (lo + hi);
    double dx_old = std::abs(hi - lo);
    double dx = dx_old;
    double fr = f(root);
    double dfr = df(root);
    for (int i = 0; i < max_iter; ++i) {
        const bool newton_out = ((root - hi) * dfr - fr) * ((root - lo) * dfr - fr) > 0.0;
        const bool too_slow = std::abs(2.0 * fr) > std::abs(dx_old * dfr);
        if (newton_out || too_slow) {
            dx_old = dx;
            dx = 0.5 * (hi - lo);
            root = lo + dx;
        } else {
            dx_old = dx;
            dx = fr / dfr;
            root -= dx;
        }
        if (std::abs(dx) <= xtol * (1.0 + std::abs(root))) return root;
        fr = f(root);
        dfr = df(root);
        if (std::abs(fr) <= ftol) return root;
        if (fr < 0.0) lo = root; else hi = root;
    }
    return root;
}

/// Plain bisection for derivative-free callers.
template <class F>
double find_root_bisect(F&& f, double lo, double hi,
                        double xtol = 1e-14, int max_iter = 200) {
    double fl = f(lo);
    double fh = f(hi);
    if (fl == 0.0) return lo;
    if (fh == 0.0) return hi;
    if ((fl > 0.0) == (fh > 0.0))
        throw std::invalid_argument("find_root_bisect: endpoints do not bracket a root");
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0 || std::abs(hi - lo) <= xtol * (1.0 + std::abs(mid))) return mid;
        if ((fm > 0.0) == (fh > 0.0)) { hi = mid; fh = fm; }
        else { lo = mid; fl = fm; }
    }
    return 0.5 * (lo + hi);
}

/// Richardson-extrapolated central difference, O(h^4) truncation error.
template <class F>
double derivative(F&& f, double x, double h = 1e-6) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace mirrorlab

#endif  // MIRRORLAB_ROOT_FIND_HPP
