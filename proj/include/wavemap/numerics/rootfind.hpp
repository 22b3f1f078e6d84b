#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace wavemap {

struct RootResult {
    double x = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Bisection on a bracket [lo, hi] with f(lo), f(hi) of opposite sign,
/// followed by Newton polish when a derivative is supplied. Convergence:
/// |dx| <= abs_tol + rel_tol*|x|.
inline RootResult bisect(const std::function<double(double)>& f, double lo, double hi,
                         double abs_tol = 1e-14, double rel_tol = 4e-16, int max_iter = 400) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return {lo, 0, true};
    if (fhi == 0.0) return {hi, 0, true};
    if (std::signbit(flo) == std::signbit(fhi))
        throw std::runtime_error("bisect: root not bracketed");
    RootResult r;
    for (int i = 0; i < max_iter; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        r.iterations = i + 1;
        if (fm == 0.0 || (hi - lo) <= 2.0 * (abs_tol + rel_tol * std::fabs(mid))) {
            r.x = mid;
            r.converged = true;
            return r;
        }
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    r.x = 0.5 * (lo + hi);
    r.converged = true;  // bracket exhausted to max_iter halvings
    return r;
}

/// Safeguarded Newton: Newton steps clipped to a maintained bracket,
/// bisection fallback when the step leaves it or stalls.
inline RootResult newton_bisect(const std::function<double(double)>& f,
                                const std::function<double(double)>& df, double lo, double hi,
                                double x0, double abs_tol = 1e-14, double rel_tol = 4e-16,
                                int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, 0, true};
    if (fhi == 0.0) return {hi, 0, true};
    if (std::signbit(flo) == std::signbit(fhi))
        throw std::runtime_error("newton_bisect: root not bracketed");
    if (flo > 0.0) std::swap(lo, hi);  // keep f(lo) < 0 < f(hi)

    double x = x0;
    if (!((x > lo && x < hi) || (x > hi && x < lo))) x = 0.5 * (lo + hi);
    double dx_old = std::fabs(hi - lo), dx = dx_old;
    double fx = f(x), dfx = df(x);
    RootResult r;
    for (int i = 0; i < max_iter; ++i) {
        r.iterations = i + 1;
        bool newton_ok = dfx != 0.0;
        double xn = newton_ok ? x - fx / dfx : x;
        bool inside = (xn - lo) * (xn - hi) < 0.0;
        if (!newton_ok || !inside || std::fabs(2.0 * fx) > std::fabs(dx_old * dfx)) {
            dx_old = dx;
            dx = 0.5 * (hi - lo);
            x = lo + dx;
        } else {
            dx_old = dx;
            dx = xn - x;
            x = xn;
        }
        if (std::fabs(dx) <= abs_tol + rel_tol * std::fabs(x)) {
            r.x = x;
            r.converged = true;
            return r;
        }
        fx = f(x);
        dfx = df(x);
        if (fx == 0.0) {
            r.x = x;
            r.converged = true;
            return r;
        }
        if (fx < 0.0) lo = x; else hi = x;
    }
    r.x = x;
    r.converged = false;
    return r;
}

/// Expand [lo, hi] geometrically until f changes sign across it.
/// grow_hi/grow_lo pick which end(s) move. Throws on failure.
inline void expand_bracket(const std::function<double(double)>& f, double& lo, double& hi,
                           bool grow_lo, bool grow_hi, double factor = 2.0, int max_steps = 200) {
    double flo = f(lo), fhi = f(hi);
    for (int i = 0; i < max_steps; ++i) {
        if (std::signbit(flo) != std::signbit(fhi) || flo == 0.0 || fhi == 0.0) return;
        if (grow_lo) { lo /= factor; flo = f(lo); }
        if (grow_hi) { hi *= factor; fhi = f(hi); }
    }
    throw std::runtime_error("expand_bracket: no sign change found");
}

}  // namespace wavemap
