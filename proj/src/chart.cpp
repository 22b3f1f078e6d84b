#include "wavemap/chart.hpp"

#include <cmath>

#include "wavemap/numerics/rootfind.hpp"

namespace wavemap {

namespace {

void validate(const CoordParams& p) {
    if (!(p.mu > 0.0)) throw std::domain_error("CoordParams: mu must be positive");
    if (!(p.alpha >= 0.0) || !(p.alpha <= 1.0))
        throw std::domain_error("CoordParams: alpha must be in [0, 1]");
    if (!(p.beta > 0.0)) throw std::domain_error("CoordParams: beta must be positive");
}

}  // namespace

double solve_gamma(double alpha, double beta) {
    if (!(beta > 0.0) || !(alpha >= 0.0) || !(alpha <= 1.0))
        throw std::domain_error("solve_gamma: need beta > 0, alpha in [0,1]");
    // log residual in s = ln(gamma); strictly increasing on s > -(1-alpha)/3
    auto res = [alpha, beta](double s) {
        return s - 0.5 * std::log(2.0) + (0.5 + alpha) * std::log(3.0 * s + 1.0 - alpha) -
               alpha * std::log(2.0 * s + 1.0 - alpha) + std::log(beta);
    };
    double s_min = -(1.0 - alpha) / 3.0;
    double lo = s_min + 1e-13 * std::max(1.0, std::fabs(s_min));
    if (alpha == 1.0) lo = 1e-13;
    double hi = 2.0;
    while (res(hi) < 0.0) hi *= 2.0;
    int guard = 0;
    while (res(lo) > 0.0) {
        lo = s_min + (lo - s_min) * 0.25;
        if (++guard > 200) throw ChartError("solve_gamma: no root on the admissible branch");
    }
    auto r = bisect(res, lo, hi, 1e-16, 2e-16, 300);
    return std::exp(r.x);
}

Chart::Chart(const CoordParams& params) : params_(params) {
    validate(params_);
    double g = solve_gamma(params_.alpha, params_.beta);
    double s = std::log(g);
    double s3 = 3.0 * s + 1.0 - params_.alpha;
    double s2 = 2.0 * s + 1.0 - params_.alpha;
    double scale = std::sqrt(2.0 / params_.mu);
    crit_.gamma = g;
    crit_.x_cr = scale / std::sqrt(s3);
    crit_.y_cr = scale * s2 / (s3 * std::sqrt(s3));
    ln_smu_over_beta_ = 0.5 * std::log(params_.mu) - std::log(params_.beta);
}

double Chart::log_arg(double x, double y) const {
    return ln_smu_over_beta_ + params_.alpha * std::log(y) + (1.0 - params_.alpha) * std::log(x);
}

double Chart::solve_lower(double x) const {
    const double mu = params_.mu, al = params_.alpha;
    const double half_mu_x3 = 0.5 * mu * x * x * x;
    auto f = [&](double y) { return y - x + half_mu_x3 * log_arg(x, y); };
    auto df = [&](double y) { return 1.0 + half_mu_x3 * al / y; };
    if (al == 0.0) {
        double y = x - half_mu_x3 * log_arg(x, 1.0);  // log is y-independent
        if (!(y > 0.0)) throw ChartError("lower branch: root not positive at alpha = 0");
        return y;
    }
    double lo = x, hi = x;
    if (f(x) > 0.0) {
        expand_bracket(f, lo, hi, true, false, 2.0, 1100);
    } else {
        expand_bracket(f, lo, hi, false, true, 2.0, 1100);
    }
    auto r = newton_bisect(f, df, lo, hi, 0.5 * (lo + hi), 1e-300, 2e-16, 300);
    return r.x;
}

double Chart::solve_upper_greater(double x) const {
    const double mu = params_.mu, al = params_.alpha;
    const double half_mu_x3 = 0.5 * mu * x * x * x;
    auto f = [&](double y) { return y + x - 2.0 * crit_.y_cr - half_mu_x3 * log_arg(x, y); };
    auto df = [&](double y) { return 1.0 - half_mu_x3 * al / y; };
    if (al == 0.0) {
        double y = 2.0 * crit_.y_cr - x + half_mu_x3 * log_arg(x, 1.0);
        if (!(y > 0.0)) throw ChartError("upper branch: root not positive at alpha = 0");
        return y;
    }
    // residual has its minimum at y* = al mu x^3/2; the greater root lies right of it
    double ystar = al * half_mu_x3;
    if (f(ystar) > 0.0)
        throw ChartError("upper branch: no root beyond the residual minimum (chart degenerate, "
                         "ln(gamma) < alpha - 1/2?)");
    double lo = ystar;
    double hi = std::max({2.0 * crit_.y_cr, 2.0 * ystar, x});
    expand_bracket(f, lo, hi, false, true, 2.0, 1100);
    auto r = newton_bisect(f, df, lo, hi, std::max(crit_.y_cr, ystar * 1.5), 1e-300, 2e-16, 300);
    return r.x;
}

Chart::UpperRoots Chart::upper_roots(double x) const {
    if (!(x > crit_.x_cr)) throw std::domain_error("upper_roots: x must exceed x_cr");
    const double mu = params_.mu, al = params_.alpha;
    const double half_mu_x3 = 0.5 * mu * x * x * x;
    UpperRoots roots{0.0, solve_upper_greater(x)};
    if (al == 0.0) return roots;  // single root: the log carries no y
    auto f = [&](double y) { return y + x - 2.0 * crit_.y_cr - half_mu_x3 * log_arg(x, y); };
    double ystar = al * half_mu_x3;
    double lo = std::min(ystar, 1e-280);
    // residual -> +inf as y -> 0+; if it is still negative at the smallest
    // representable bracket the root underflows and is reported as 0
    if (f(lo) > 0.0) {
        auto r = bisect(f, lo, ystar, 1e-300, 2e-16, 1200);
        roots.lower = r.x;
    }
    return roots;
}

ChartPoint Chart::assemble(double x, double y, Branch branch) const {
    const double mu = params_.mu, al = params_.alpha;
    ChartPoint p;
    p.x = x;
    p.y = y;
    p.branch = branch;
    p.A = log_arg(x, y);
    double w = 0.5 * al * mu * x * x * x / y;
    p.X = 1.0 + w;
    p.Z = 1.0 - w;
    p.Y_cap = 1.0 - 0.5 * mu * x * x * (3.0 * p.A + 1.0 - al);
    if (branch == Branch::lower) {
        p.chi = -mu * x * x * (p.A + 0.5) / p.X;
    } else {
        p.chi = (-2.0 * crit_.y_cr / x + mu * x * x * (p.A + 0.5)) / p.Z;
    }
    return p;
}

ChartPoint Chart::at(double x) const {
    if (!(x > 0.0)) throw std::domain_error("Chart::at: x must be positive");
    if (x <= crit_.x_cr) return assemble(x, solve_lower(x), Branch::lower);
    return assemble(x, solve_upper_greater(x), Branch::upper);
}

double Chart::map_y_to_x(double y) const {
    if (!(y > 0.0)) throw std::domain_error("map_y_to_x: y must be positive");
    if (y == crit_.y_cr) return crit_.x_cr;
    auto f = [&](double x) { return map_x_to_y(x) - y; };
    double lo, hi;
    if (y < crit_.y_cr) {
        lo = std::min(y, crit_.x_cr * 0.5);
        hi = crit_.x_cr;
        if (f(lo) > 0.0) expand_bracket(f, lo, hi, true, false, 2.0, 1100);
    } else {
        lo = crit_.x_cr;
        hi = std::max(y, 2.0 * crit_.x_cr);
        if (f(hi) < 0.0) expand_bracket(f, lo, hi, false, true, 2.0, 1100);
    }
    auto r = bisect(f, lo, hi, 1e-300, 2e-16, 300);
    return r.x;
}

double Chart::dy_dx(double x) const {
    ChartPoint p = at(x);
    return (p.branch == Branch::lower) ? p.Y_cap / p.X : -p.Y_cap / p.Z;
}

double Chart::chi_combo(double x) const {
    ChartPoint p = at(x);
    const double mu = params_.mu, al = params_.alpha;
    double y = p.y;
    if (p.branch == Branch::lower) {
        return -(mu * x * x / p.X) *
               ((1.0 - al) / x + al * p.Y_cap / (y * p.X) -
                (al * mu * x * x / (2.0 * y * p.X)) * (p.A + 0.5) *
                    (3.0 - (x / y) * (p.Y_cap / p.X)));
    }
    return 6.0 * crit_.y_cr / (x * x * p.Z) +
           (mu * x * x / p.Z) * ((1.0 - al) / x - (al / y) * (p.Y_cap / p.Z)) +
           (al * mu * x / (2.0 * y * p.Z * p.Z)) *
               (-2.0 * crit_.y_cr + mu * x * x * x * (p.A + 0.5)) *
               (3.0 + (x / y) * (p.Y_cap / p.Z));
}

namespace {

double cubic_small_coeff(double z, double p) {
    // t = z + p t^3 with |p| tiny (removable point of the alpha=1 forms)
    double t = z;
    for (int i = 0; i < 3; ++i) t = z + p * t * t * t;
    return t;
}

}  // namespace

double alpha1_z0(double gamma) {
    if (!(gamma > std::exp(0.5))) throw std::domain_error("alpha1_z0: gamma must exceed e^(1/2)");
    double lg = std::log(gamma);
    auto f = [lg, gamma](double z) {
        return (z - 2.0) * (z - 2.0) * std::log(gamma * z) / lg - 1.0;
    };
    double lo = 2.0, hi = 4.0;
    expand_bracket(f, lo, hi, false, true, 2.0, 200);
    return bisect(f, lo, hi, 1e-15, 2e-16).x;
}

double alpha1_closed_form(double z, double gamma) {
    if (!(z > 0.0)) throw std::domain_error("alpha1_closed_form: z must be positive");
    if (!(gamma > std::exp(0.5)))
        throw std::domain_error("alpha1_closed_form: gamma must exceed e^(1/2)");
    double lg = std::log(gamma);
    double lgz = std::log(gamma * z);

    if (z < 1.0) {
        // cubic (4/27)(lgz/lg) t^3 - t + z = 0, smallest positive root
        if (std::fabs(lgz) < 1e-8) {
            // removable point gamma z = 1: both neighbouring forms reduce to
            // t = z + p t^3 with p = (4/27) lgz/lg -> 0
            return cubic_small_coeff(z, (4.0 / 27.0) * lgz / lg);
        }
        if (lgz < 0.0) {
            double u = z * std::sqrt(-lgz / lg);
            return 3.0 * std::sqrt(lg / (-lgz)) * std::sinh(std::asinh(u) / 3.0);
        }
        double u = z * std::sqrt(lgz / lg);
        if (u > 1.0) throw ChartError("alpha1_closed_form: no real root for z < 1 (u > 1)");
        return 3.0 * std::sqrt(lg / lgz) * std::sin(std::asin(u) / 3.0);
    }

    double z0 = alpha1_z0(gamma);
    double q = lgz / lg;
    if (z <= z0) {
        double phi;
        if (z <= 2.0) {
            double w = (2.0 - z) * std::sqrt(q);
            phi = M_PI / 6.0 + std::acos(std::min(1.0, w)) / 3.0;
        } else {
            double w = (z - 2.0) * std::sqrt(q);
            phi = M_PI / 3.0 + std::asin(std::min(1.0, w)) / 3.0;
        }
        return 3.0 / std::sqrt(q) * std::sin(phi);
    }
    double r = (z - 2.0) / q;
    double disc = r * r - 1.0 / (q * q * q);
    double Q = r + std::sqrt(std::max(0.0, disc));
    double Q3 = std::cbrt(Q);
    return 1.5 * (Q3 + 1.0 / (q * Q3));
}

}  // namespace wavemap
