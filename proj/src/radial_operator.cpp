#include "wavemap/radial_operator.hpp"

#include <cmath>
#include <stdexcept>

#include "wavemap/io.hpp"
#include "wavemap/numerics/quadrature.hpp"

namespace wavemap {

RadialProfile RadialProfile::log_grid(double y_min, double y_max, std::size_t n) {
    if (!(y_min > 0.0) || !(y_max > y_min) || n < 8)
        throw std::invalid_argument("RadialProfile::log_grid: bad arguments");
    RadialProfile p;
    p.grid.resize(n);
    p.values.assign(n, 0.0);
    p.weights.resize(n);
    double lmin = std::log(y_min), lmax = std::log(y_max);
    for (std::size_t i = 0; i < n; ++i)
        p.grid[i] = std::exp(lmin + (lmax - lmin) * double(i) / double(n - 1));
    // trapezoid in t = ln y: int f y dy = int f(e^t) e^{2t} dt, so w_i = y_i^2 dt_i;
    // superconvergent for integrands decaying at both ends of the log window
    for (std::size_t i = 0; i < n; ++i) {
        double tl = (i == 0) ? std::log(p.grid[0]) : std::log(p.grid[i - 1]);
        double tr = (i + 1 == n) ? std::log(p.grid[n - 1]) : std::log(p.grid[i + 1]);
        p.weights[i] = p.grid[i] * p.grid[i] * 0.5 * (tr - tl);
    }
    return p;
}

RadialProfile RadialProfile::sample(const std::function<double(double)>& f, double y_min,
                                    double y_max, std::size_t n) {
    RadialProfile p = log_grid(y_min, y_max, n);
    for (std::size_t i = 0; i < n; ++i) p.values[i] = f(p.grid[i]);
    return p;
}

double RadialProfile::integral() const {
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) s += weights[i] * values[i];
    return s;
}

double KinkModel::f(double u) const {
    if (type == Nonlinearity::sine) return 0.5 * k * k * std::sin(2.0 * u);
    return 2.0 * u * (u * u - 1.0);
}

double KinkModel::f_prime(double u) const {
    if (type == Nonlinearity::sine) return k * k * std::cos(2.0 * u);
    return 6.0 * u * u - 2.0;
}

double KinkModel::F(double u) const {
    if (type == Nonlinearity::sine) {
        double s = std::sin(u);
        return 0.5 * k * k * s * s;
    }
    double w = u * u - 1.0;
    return 0.5 * w * w;
}

double KinkModel::kink(double rho) const {
    if (type == Nonlinearity::sine) return 2.0 * std::atan(std::pow(rho, k));
    return (1.0 - rho * rho) / (1.0 + rho * rho);
}

double KinkModel::zero_mode(double rho) const {
    if (type == Nonlinearity::sine) {
        double rk = std::pow(rho, k);
        return k * rk / (1.0 + rk * rk);
    }
    return 4.0 * rho * rho / ((1.0 + rho * rho) * (1.0 + rho * rho));
}

double KinkModel::u_origin() const { return type == Nonlinearity::sine ? 0.0 : 1.0; }
double KinkModel::u_infinity() const { return type == Nonlinearity::sine ? M_PI : -1.0; }

RadialProfile apply_L(const RadialProfile& w, const KinkModel& model) {
    std::size_t n = w.size();
    if (n < 3) throw std::invalid_argument("apply_L: profile too small");
    RadialProfile out = w;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double y = w.grid[i];
        double u0 = w.values[i - 1], u1 = w.values[i], u2 = w.values[i + 1];
        double hl = w.grid[i] - w.grid[i - 1];
        double hr = w.grid[i + 1] - w.grid[i];
        double d2 = 2.0 * (u0 / (hl * (hl + hr)) - u1 / (hl * hr) + u2 / (hr * (hl + hr)));
        double d1 = (-hr / (hl * (hl + hr))) * u0 + ((hr - hl) / (hl * hr)) * u1 +
                    (hl / (hr * (hl + hr))) * u2;
        double U = model.kink(y);
        out.values[i] = -d2 - d1 / y + model.f_prime(U) * u1 / (y * y);
    }
    out.values[0] = out.values[1];
    out.values[n - 1] = out.values[n - 2];
    return out;
}

double apply_L_error_estimate(const RadialProfile& w, const KinkModel& model) {
    if (w.size() < 9) return INFINITY;
    RadialProfile coarse;
    for (std::size_t i = 0; i < w.size(); i += 2) {
        coarse.grid.push_back(w.grid[i]);
        coarse.values.push_back(w.values[i]);
        coarse.weights.push_back(0.0);
    }
    RadialProfile fine_L = apply_L(w, model);
    RadialProfile coarse_L = apply_L(coarse, model);
    double worst = 0.0;
    for (std::size_t j = 2; j + 2 < coarse.size(); ++j) {
        double d = coarse_L.values[j] - fine_L.values[2 * j];
        // second-order stencil: (coarse - fine) is ~3x the fine error
        worst = std::max(worst, std::fabs(d) / 3.0 * (1.0 + coarse.grid[j] * coarse.grid[j]));
    }
    return worst;
}

double zero_mode_w1(double y) { return y / (1.0 + y * y); }

double zero_mode_w2(double y) {
    return 0.5 * y - 0.5 / y + 2.0 * y * std::log(y) / (1.0 + y * y);
}

double zero_mode_w1_prime(double y) {
    double d = 1.0 + y * y;
    return (1.0 - y * y) / (d * d);
}

double zero_mode_w2_prime(double y) {
    double d = 1.0 + y * y;
    return 0.5 + 0.5 / (y * y) + (2.0 * std::log(y) + 2.0) / d -
           4.0 * y * y * std::log(y) / (d * d);
}

namespace {

// cumulative integral of sampled data: trapezoid cells with a third-order
// curvature correction from the neighbouring node
std::vector<double> cumulative(const std::vector<double>& y, const std::vector<double>& g) {
    std::size_t n = y.size();
    std::vector<double> cum(n, 0.0);
    auto curv = [&](std::size_t j) {  // second derivative estimate at node j
        if (j == 0 || j + 1 >= n) return 0.0;
        double hl = y[j] - y[j - 1], hr = y[j + 1] - y[j];
        return 2.0 * (g[j - 1] / (hl * (hl + hr)) - g[j] / (hl * hr) +
                      g[j + 1] / (hr * (hl + hr)));
    };
    for (std::size_t i = 1; i < n; ++i) {
        double h = y[i] - y[i - 1];
        double base = 0.5 * h * (g[i - 1] + g[i]);
        double s = (i + 1 < n) ? 0.5 * (curv(i - 1) + curv(i)) : curv(i - 1);
        cum[i] = cum[i - 1] + base - h * h * h / 12.0 * s;
    }
    return cum;
}

}  // namespace

GreenResult green_solve(const RadialProfile& psi, double c1, double solv_tol) {
    std::size_t n = psi.size();
    GreenResult res;
    res.w = psi;
    std::vector<double> g1(n), g2(n);
    for (std::size_t i = 0; i < n; ++i) {
        g1[i] = zero_mode_w1(psi.grid[i]) * psi.values[i] * psi.grid[i];
        g2[i] = zero_mode_w2(psi.grid[i]) * psi.values[i] * psi.grid[i];
    }
    std::vector<double> P1 = cumulative(psi.grid, g1);
    std::vector<double> P2 = cumulative(psi.grid, g2);
    double total1 = P1[n - 1];
    for (std::size_t i = 0; i < n; ++i) {
        double y = psi.grid[i];
        // int_y^inf as total minus prefix
        res.w.values[i] = c1 * zero_mode_w1(y) + zero_mode_w1(y) * P2[i] +
                          zero_mode_w2(y) * (total1 - P1[i]);
    }
    res.growth_coefficient = total1;
    res.unbounded = std::fabs(total1) > solv_tol;
    return res;
}

SolvabilityResult solvability_integral(const RadialProfile& psi) {
    SolvabilityResult r{};
    double head = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i)
        head += psi.weights[i] * zero_mode_w1(psi.grid[i]) * psi.values[i];
    r.value = head;
    // tail estimate: fit |integrand| ~ C y^-p over the last decade, integrate on
    double y_hi = psi.grid.back();
    double y_lo = y_hi / 10.0;
    std::size_t i_lo = psi.size() - 1;
    while (i_lo > 0 && psi.grid[i_lo] > y_lo) --i_lo;
    double g_hi = zero_mode_w1(y_hi) * psi.values.back() * y_hi;
    double g_lo = zero_mode_w1(psi.grid[i_lo]) * psi.values[i_lo] * psi.grid[i_lo];
    if (g_hi != 0.0 && g_lo != 0.0 && std::isfinite(g_hi) && std::isfinite(g_lo)) {
        double p = -std::log(std::fabs(g_hi / g_lo)) / std::log(y_hi / psi.grid[i_lo]);
        if (p > 1.0) r.tail_estimate = std::fabs(g_hi) * y_hi / (p - 1.0);
        else r.tail_estimate = INFINITY;
    }
    r.converged = r.tail_estimate <= 1e-3 * std::max(std::fabs(head), 1e-300);
    return r;
}

ReducedSolvability reduced_solvability(double mu, double lambda_dot_sq, double beta) {
    if (!(mu > 0.0) || !(lambda_dot_sq > 0.0) || !(beta > 0.0))
        throw std::domain_error("reduced_solvability: parameters must be positive");
    double lnsb = std::log(std::sqrt(mu) / beta);
    auto integrand = [&](double x) {
        double d = 1.0 + x * x;
        return x * (x / d) *
               (8.0 * mu * x * (lnsb + std::log(x) + 0.5) + 4.0 * lambda_dot_sq * x) / (d * d);
    };
    ReducedSolvability r;
    r.integral = integrate(integrand, 0.0, 1.0, 1e-13, 1e-18) +
                 integrate_to_inf(integrand, 1.0, 1e-13, 1e-18);
    r.closed_form = lambda_dot_sq + 2.0 * mu * (lnsb + 1.0);
    return r;
}

std::pair<double, double> appendix2_integrals() {
    auto f1 = [](double y) { return std::pow(y, 3) / std::pow(1.0 + y * y, 3); };
    auto f2 = [](double y) { return std::pow(y, 3) * std::log(y) / std::pow(1.0 + y * y, 3); };
    double i1 = integrate(f1, 0.0, 1.0, 1e-13, 1e-16) + integrate_to_inf(f1, 1.0, 1e-13, 1e-16);
    double i2 = integrate(f2, 0.0, 1.0, 1e-13, 1e-16) + integrate_to_inf(f2, 1.0, 1e-13, 1e-16);
    return {i1, i2};
}

void write_profile_csv(const std::string& path, const RadialProfile& profile) {
    CsvWriter csv(path, {"y", "value"});
    for (std::size_t i = 0; i < profile.size(); ++i)
        csv.row({profile.grid[i], profile.values[i]});
}

double scaling_pairing(double R, const KinkModel& model) {
    auto integrand = [&](double x) {
        double h = 1e-6 * std::max(x, 1e-6);
        double zp = (model.zero_mode(x + h) - model.zero_mode(x - h)) / (2.0 * h);
        double z = model.zero_mode(x);
        return z * (z + x * zp) * x;
    };
    return integrate(integrand, 0.0, R, 1e-12, 1e-15);
}

}  // namespace wavemap
