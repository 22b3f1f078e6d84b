#pragma once

// Test-side oracles, kept independent of the library's numerics: plain
// bisection, trapezoid quadrature, central differences. Slow but simple.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iters = 200) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw std::runtime_error("oracle::bisect: not bracketed");
    for (int i = 0; i < iters; ++i) {
        double m = 0.5 * (lo + hi);
        double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0) == (flo > 0)) {
            lo = m;
            flo = fm;
        } else {
            hi = m;
        }
    }
    return 0.5 * (lo + hi);
}

/// Composite Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 4096) {
    if (n % 2) ++n;
    double h = (b - a) / n, s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double central_diff2(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace oracle
