#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace wavemap {

/// Adaptive Gauss-Kronrod (G7,K15) on a finite interval.
/// Panels are bisected until |K15-G7| passes the local tolerance share.
class GaussKronrod {
  public:
    struct Options {
        double rel_tol = 1e-12;
        double abs_tol = 1e-14;
        int max_depth = 48;
    };

    static double integrate(const std::function<double(double)>& f, double a, double b,
                            Options opt) {
        double coarse = std::fabs(panel(f, a, b).first);
        double scale = std::max(coarse, opt.abs_tol);
        return adapt(f, a, b, opt, scale, 0);
    }

    /// Semi-infinite integral via x = a + t/(1-t), t in [0,1).
    static double integrate_to_inf(const std::function<double(double)>& f, double a,
                                   Options opt) {
        auto g = [&](double t) {
            double om = 1.0 - t;
            double x = a + t / om;
            return f(x) / (om * om);
        };
        return integrate(g, 0.0, 1.0, opt);
    }

  private:
    static std::pair<double, double> panel(const std::function<double(double)>& f, double a,
                                           double b) {
        // K15 abscissae/weights and embedded G7 weights.
        static const double xk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                                     0.741531185599394, 0.586087235467691, 0.405845151377397,
                                     0.207784955007898, 0.0};
        static const double wk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                                     0.140653259715525, 0.169004726639267, 0.190350578064785,
                                     0.204432940075298, 0.209482141084728};
        static const double wg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                     0.417959183673469};
        double c = 0.5 * (a + b), h = 0.5 * (b - a);
        double fc = f(c);
        double rk = wk[7] * fc;
        double rg = wg[3] * fc;
        for (int j = 0; j < 7; ++j) {
            double fv = f(c - h * xk[j]) + f(c + h * xk[j]);
            rk += wk[j] * fv;
            if (j % 2 == 1) rg += wg[j / 2] * fv;
        }
        return {rk * h, std::fabs(rk - rg) * h};
    }

    static double adapt(const std::function<double(double)>& f, double a, double b,
                        const Options& opt, double scale, int depth) {
        auto [v, err] = panel(f, a, b);
        if (err <= opt.abs_tol + opt.rel_tol * std::max(scale, std::fabs(v)) ||
            depth >= opt.max_depth)
            return v;
        double c = 0.5 * (a + b);
        return adapt(f, a, c, opt, scale, depth + 1) + adapt(f, c, b, opt, scale, depth + 1);
    }
};

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12, double abs_tol = 1e-14) {
    return GaussKronrod::integrate(f, a, b, {rel_tol, abs_tol, 48});
}

inline double integrate_to_inf(const std::function<double(double)>& f, double a,
                               double rel_tol = 1e-12, double abs_tol = 1e-14) {
    return GaussKronrod::integrate_to_inf(f, a, {rel_tol, abs_tol, 48});
}

/// Integrate over [a,b] split at interior breakpoints (useful when the
/// integrand has known sharp features).
inline double integrate_split(const std::function<double(double)>& f,
                              const std::vector<double>& cuts, double rel_tol = 1e-12,
                              double abs_tol = 1e-14) {
    if (cuts.size() < 2) throw std::invalid_argument("integrate_split: need >= 2 cut points");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate(f, cuts[i], cuts[i + 1], rel_tol, abs_tol);
    return total;
}

}  // namespace wavemap
