#include "wavemap/wave_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavemap {

namespace {

// Innermost node: the bare stencil loses an order through the 1/rho terms, so
// fit the near-axis parity form (u ~ a rho + b rho^3 for the degree-1 sine
// model, u ~ u0 + c rho^2 + d rho^4 for the polynomial one) and cancel the
// 1/rho^2 pieces analytically against the linearized nonlinearity.
static double axis_acceleration(const RadialField& f) {
    double r1 = f.rho[1], r2 = f.rho[2];
    double u1 = f.u[1], u2 = f.u[2];
    if (f.model.type == Nonlinearity::sine && f.model.k == 1) {
        double b = (u2 / r2 - u1 / r1) / (r2 * r2 - r1 * r1);
        double k2 = f.model.f_prime(0.0);  // = k^2
        return 8.0 * b * r1 - (f.model.f(u1) - k2 * u1) / (r1 * r1);
    }
    if (f.model.type == Nonlinearity::polynomial) {
        double w1 = u1 - 1.0, w2 = u2 - 1.0;
        double d = (w2 / (r2 * r2) - w1 / (r1 * r1)) / (r2 * r2 - r1 * r1);
        return 12.0 * d * r1 * r1 - (f.model.f(u1) - 4.0 * w1) / (r1 * r1);
    }
    return NAN;  // handled by the generic stencil below
}

std::vector<double> acceleration(const RadialField& f) {
    std::size_t n = f.rho.size();
    std::vector<double> a(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double hl = f.rho[i] - f.rho[i - 1];
        double hr = f.rho[i + 1] - f.rho[i];
        double ul = f.u[i - 1], uc = f.u[i], ur = f.u[i + 1];
        double d2 = 2.0 * (ul / (hl * (hl + hr)) - uc / (hl * hr) + ur / (hr * (hl + hr)));
        double d1 = (-hr / (hl * (hl + hr))) * ul + ((hr - hl) / (hl * hr)) * uc +
                    (hl / (hr * (hl + hr))) * ur;
        double r = f.rho[i];
        a[i] = d2 + d1 / r - f.model.f(uc) / (r * r);
    }
    double ax = axis_acceleration(f);
    if (std::isfinite(ax)) a[1] = ax;
    return a;  // ends stay zero: Dirichlet
}

}  // namespace

RadialField make_initial(const KinkModel& model, double lambda0, double lambda_dot0,
                         const SimOptions& opt) {
    if (!(lambda0 > 0.0) || !(lambda0 < opt.R / 10.0))
        throw std::domain_error("make_initial: need 0 < lambda0 < R/10");
    if (lambda_dot0 > 0.0) throw std::domain_error("make_initial: lambda_dot0 must be <= 0");
    RadialField f;
    f.model = model;
    std::size_t n = opt.N + 1;
    f.rho.resize(n);
    f.u.resize(n);
    f.v.resize(n);
    double s = std::sinh(opt.sinh_bias);
    for (std::size_t i = 0; i < n; ++i)
        f.rho[i] = opt.R * std::sinh(opt.sinh_bias * double(i) / double(n - 1)) / s;
    for (std::size_t i = 0; i < n; ++i) {
        double x = f.rho[i] / lambda0;
        f.u[i] = model.kink(x);
        f.v[i] = -2.0 * (lambda_dot0 / lambda0) * model.zero_mode(x);
    }
    f.v.front() = 0.0;
    f.v.back() = 0.0;
    f.h_min = f.rho[1] - f.rho[0];
    return f;
}

double cfl_dt(const RadialField& f, double cfl) {
    double hmin = INFINITY;
    for (std::size_t i = 1; i < f.rho.size(); ++i) hmin = std::min(hmin, f.rho[i] - f.rho[i - 1]);
    return cfl * hmin;
}

void step(RadialField& f, double dt) {
    if (f.h_min > 0.0 && dt > f.h_min)
        throw std::domain_error("step: dt exceeds the unit-speed CFL bound");
    std::vector<double> a = acceleration(f);
    std::size_t n = f.u.size();
    for (std::size_t i = 1; i + 1 < n; ++i) f.v[i] += 0.5 * dt * a[i];
    for (std::size_t i = 1; i + 1 < n; ++i) f.u[i] += dt * f.v[i];
    a = acceleration(f);
    for (std::size_t i = 1; i + 1 < n; ++i) f.v[i] += 0.5 * dt * a[i];
    f.t += dt;
}

double field_energy(const RadialField& f) {
    std::size_t n = f.rho.size();
    auto density = [&](std::size_t i) {
        double ur;
        if (i == 0) {
            ur = (f.u[1] - f.u[0]) / (f.rho[1] - f.rho[0]);
            // F(u)/rho^2 -> (1/2) f'(U0) u'(0)^2 at the origin
            return 0.5 * f.v[0] * f.v[0] + 0.5 * ur * ur +
                   0.5 * f.model.f_prime(f.model.u_origin()) * ur * ur;
        }
        if (i + 1 == n) {
            ur = (f.u[n - 1] - f.u[n - 2]) / (f.rho[n - 1] - f.rho[n - 2]);
        } else {
            double hl = f.rho[i] - f.rho[i - 1], hr = f.rho[i + 1] - f.rho[i];
            ur = (-hr / (hl * (hl + hr))) * f.u[i - 1] + ((hr - hl) / (hl * hr)) * f.u[i] +
                 (hl / (hr * (hl + hr))) * f.u[i + 1];
        }
        double r = f.rho[i];
        return 0.5 * f.v[i] * f.v[i] + 0.5 * ur * ur + f.model.F(f.u[i]) / (r * r);
    };
    double E = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double h = f.rho[i + 1] - f.rho[i];
        E += 0.5 * h * (density(i) * f.rho[i] + density(i + 1) * f.rho[i + 1]);
    }
    return E;
}

double topological_charge(const RadialField& f) {
    double sep = f.model.u_infinity() - f.model.u_origin();
    return (f.u.back() - f.u.front()) / sep * (f.model.type == Nonlinearity::sine ? 1.0 : -1.0);
}

std::optional<double> extract_lambda(const RadialField& f) {
    double mid = f.model.kink(1.0);
    double sign = f.model.u_infinity() > f.model.u_origin() ? 1.0 : -1.0;
    for (std::size_t i = 0; i + 1 < f.u.size(); ++i) {
        double a = sign * (f.u[i] - mid), b = sign * (f.u[i + 1] - mid);
        if (a <= 0.0 && b > 0.0) {
            double w = -a / (b - a);
            return f.rho[i] + w * (f.rho[i + 1] - f.rho[i]);
        }
    }
    return std::nullopt;
}

std::optional<double> extract_lambda_alt(const RadialField& f) {
    if (f.model.type == Nonlinearity::sine) {
        double up = (f.u[1] - f.u[0]) / (f.rho[1] - f.rho[0]);
        if (up <= 0.0) return std::nullopt;
        return 2.0 / up;  // U'(0) = 2 for the degree-1 kink
    }
    // polynomial kink: u ~ 1 - 2 (rho/lambda)^2 near the origin
    double w = f.u[1] - f.model.u_origin();
    if (w >= 0.0) return std::nullopt;
    return f.rho[1] * std::sqrt(-2.0 / w);
}

CollapseRun run_collapse(RadialField f, double lambda0, double lambda_stop_frac,
                         std::size_t record_every, double t_max) {
    CollapseRun run;
    run.dt = cfl_dt(f, 0.5);
    // Dirichlet far field reflects; the run must finish before the bounce
    // returns to the core (out and back is ~2R at unit speed)
    t_max = std::min(t_max, 1.8 * f.R());
    double lambda_min_grid = 4.0 * (f.rho[1] - f.rho[0]);
    auto record = [&]() {
        auto lam = extract_lambda(f);
        auto lam2 = extract_lambda_alt(f);
        if (!lam) return false;
        run.series.push_back(
            {f.t, *lam, lam2.value_or(NAN), field_energy(f), topological_charge(f)});
        return true;
    };
    if (!record()) {
        run.dispersed = true;
        return run;
    }
    while (f.t < t_max) {
        for (std::size_t k = 0; k < record_every; ++k) {
            step(f, run.dt);
            ++run.steps;
        }
        if (!record()) {
            run.dispersed = true;
            break;
        }
        double lam = run.series.back().lambda;
        if (!std::isfinite(lam) || !std::isfinite(run.series.back().energy))
            throw std::runtime_error("run_collapse: NaN detected");
        if (lam <= lambda_stop_frac * lambda0 || lam <= lambda_min_grid) {
            run.collapsed = lam <= lambda_stop_frac * lambda0 * 1.5;
            break;
        }
    }
    return run;
}

namespace {

double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters = 80) {
    const double r = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - r * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + r * (b - a); f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

BlowupFit fit_blowup(const std::vector<SeriesPoint>& series, double a) {
    if (series.size() < 8) throw std::invalid_argument("fit_blowup: series too short");
    double lam_end = series.back().lambda;
    double lam_start = series.front().lambda;
    // final decade window
    std::vector<const SeriesPoint*> win;
    for (const auto& s : series)
        if (s.lambda <= 10.0 * lam_end) win.push_back(&s);
    if (win.size() < 4) throw std::invalid_argument("fit_blowup: too few points in final decade");

    double t_end = series.back().t;
    // crude end slope for the multistart span of t*
    double ld_end = std::fabs((win.back()->lambda - win[win.size() - 2]->lambda) /
                              (win.back()->t - win[win.size() - 2]->t));
    double span = 2.0 * lam_end / std::max(ld_end, 1e-300);

    auto rms_at = [&](double ts, double b) {
        double s2 = 0.0;
        for (const auto* p : win) {
            double rem = ts - p->t;
            if (rem <= 0.0) return 1e12;
            double x = -std::log(rem);
            if (x + b <= 0.0) return 1e12;
            double r = std::log(p->lambda / rem) - (0.5 * std::log(a) - std::sqrt(x + b));
            s2 += r * r;
        }
        return std::sqrt(s2 / double(win.size()));
    };
    auto best_b = [&](double ts) {
        // seed from the last point, then golden section around it
        double rem = ts - win.back()->t;
        double x = -std::log(rem);
        double y = std::log(win.back()->lambda / rem);
        double s = 0.5 * std::log(a) - y;
        double b0 = (s > 0.0 ? s * s : 0.25) - x;
        double w = std::max(4.0, std::fabs(b0));
        return golden_min([&](double b) { return rms_at(ts, b); }, b0 - w, b0 + w);
    };

    BlowupFit fit;
    double best = INFINITY;
    for (int m = 0; m < 24; ++m) {
        double ts0 = t_end + span * (0.01 + 0.999 * double(m) / 23.0);
        double ts = golden_min(
            [&](double t) { return rms_at(t, best_b(t)); },
            t_end + 1e-4 * span, ts0 + span, 60);
        double b = best_b(ts);
        double r = rms_at(ts, b);
        if (r < best) {
            best = r;
            fit.t_star = ts;
            fit.b = b;
            fit.rms_residual = r;
        }
    }
    fit.x_min = -std::log(fit.t_star - win.front()->t);
    fit.x_max = -std::log(fit.t_star - win.back()->t);
    fit.ill_conditioned = lam_start < 10.0 * lam_end ||
                          (win.front()->lambda / win.back()->lambda) < 9.0;
    return fit;
}

}  // namespace wavemap
