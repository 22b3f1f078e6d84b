#pragma once

#include <stdexcept>
#include <string>

namespace wavemap {

/// Parameters of the nonlinear blowup transformation x -> y:
///   y = x - (mu/2) x^3 ln(sqrt(mu) y^a x^(1-a) / b)            for x <= x_cr,
///   y = 2 y_cr - x + (mu/2) x^3 ln(sqrt(mu) y^a x^(1-a) / b)   for x >  x_cr
/// (greater of the two roots on the second line).
struct CoordParams {
    double mu;     // lambda*lambda'', slowly varying; treated as an independent input
    double alpha;  // in [0, 1]
    double beta;   // > 0
};

struct CriticalData {
    double gamma;  // value of sqrt(mu) y^a x^(1-a)/b at the matching point
    double x_cr;
    double y_cr;
};

enum class Branch { lower, upper };

struct ChartPoint {
    double x;
    double y;
    Branch branch;
    double chi;    // dy/dx - y/x
    double A;      // ln(sqrt(mu) y^a x^(1-a) / b)
    double X;      // 1 + a mu x^3/(2y)
    double Z;      // 1 - a mu x^3/(2y)
    double Y_cap;  // 1 - (mu x^2/2)(3A + 1 - a)
};

struct ChartError : std::runtime_error {
    explicit ChartError(const std::string& what) : std::runtime_error(what) {}
};

/// gamma solves (g/sqrt(2)) (3 ln g + 1 - a)^(1/2+a) / (2 ln g + 1 - a)^a = 1/b
/// on the branch ln g > -(1-a)/3 (unique there).
double solve_gamma(double alpha, double beta);

/// The transformation for one fixed parameter set. Critical data is computed
/// once at construction; all evaluations afterwards are pure.
class Chart {
  public:
    explicit Chart(const CoordParams& params);

    const CoordParams& params() const { return params_; }
    const CriticalData& critical() const { return crit_; }

    /// y(x) with branch label; continuous at x_cr with value y_cr.
    ChartPoint at(double x) const;

    double map_x_to_y(double x) const { return at(x).y; }

    /// Inverse map; monotone bisection on x. round-trips with map_x_to_y.
    double map_y_to_x(double y) const;

    double chi_at(double x) const { return at(x).chi; }

    /// Closed form of dchi/dx - 2 chi/x.
    double chi_combo(double x) const;

    /// dy/dx from the chart (Y/X below the matching point, -Y/Z above).
    double dy_dx(double x) const;

    /// Both roots of the second line for x > x_cr (smaller may underflow to 0).
    struct UpperRoots {
        double lower;
        double upper;
    };
    UpperRoots upper_roots(double x) const;

  private:
    CoordParams params_;
    CriticalData crit_;
    double ln_smu_over_beta_;  // ln(sqrt(mu)/beta)

    double log_arg(double x, double y) const;  // A(x, y)
    double solve_lower(double x) const;
    double solve_upper_greater(double x) const;
    ChartPoint assemble(double x, double y, Branch branch) const;
};

/// Closed-form x/y_cr at alpha = 1 as a function of z = y/y_cr, given gamma.
/// Piecewise: hyperbolic for z < 1, gamma z < 1; trigonometric for z < 1,
/// gamma z > 1 and for 1 < z < z0; explicit cube roots for z > z0, where z0
/// solves (z0-2)^2 ln(gamma z0)/ln(gamma) = 1. The point gamma z = 1 is
/// removable and evaluated by series.
double alpha1_closed_form(double z, double gamma);

/// z0 of the alpha = 1 piecewise split.
double alpha1_z0(double gamma);

}  // namespace wavemap
