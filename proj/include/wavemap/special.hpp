#pragma once

#include <cmath>

namespace wavemap {

inline constexpr double kInvE = 0.36787944117144233;  // e^-1

/// f(x) = x ln(1/x) on (0, 1]. Increases to its maximum e^-1 at x = e^-1,
/// then decreases back to 0 at x = 1.
double f_log(double x);

/// Lower-branch inverse of f_log: the root of x ln(1/x) = z in (0, e^-1),
/// for z in (0, e^-1). The branch with f_inverse(z) -> 0 as z -> 0.
double f_inverse(double z);

/// g(z) = z / f_inverse(z) for z in (0, e^-1); satisfies g = ln(g/z), g >= 1.
double g_of(double z);

/// Inverse of g_of on the branch x >= 1: g_inverse(x) = x e^-x.
double g_inverse(double x);

}  // namespace wavemap
