#include "wavemap/special.hpp"

#include <stdexcept>

#include "wavemap/numerics/rootfind.hpp"

namespace wavemap {

double f_log(double x) {
    if (!(x > 0.0) || x > 1.0) throw std::domain_error("f_log: x must be in (0, 1]");
    return -x * std::log(x);
}

double f_inverse(double z) {
    if (z == kInvE) return kInvE;  // fixed point; the open-interval limit value
    if (!(z > 0.0) || !(z < kInvE)) throw std::domain_error("f_inverse: z must be in (0, e^-1)");
    auto f = [z](double x) { return -x * std::log(x) - z; };
    auto df = [](double x) { return -std::log(x) - 1.0; };
    // On (0, e^-1) the residual is increasing; z/ln(1/z) is the small-z asymptote.
    double guess = z / std::max(1.0, -std::log(z));
    double lo = std::min(guess * 0.25, 0.5 * kInvE);
    double hi = kInvE * (1.0 - 1e-16);
    if (f(lo) > 0.0) {
        while (f(lo) > 0.0 && lo > 1e-300) lo *= 0.5;
    }
    auto r = newton_bisect(f, df, lo, hi, guess, 1e-300, 2e-16, 300);
    return r.x;
}

double g_of(double z) {
    return z / f_inverse(z);
}

double g_inverse(double x) {
    return x * std::exp(-x);  // underflows gracefully for huge x
}

}  // namespace wavemap
