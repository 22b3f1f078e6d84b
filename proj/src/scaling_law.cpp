#include "wavemap/scaling_law.hpp"

#include <cmath>
#include <stdexcept>

#include "wavemap/numerics/ode45.hpp"
#include "wavemap/numerics/quadrature.hpp"
#include "wavemap/special.hpp"

namespace wavemap {

double mu_from_law(double lambda_dot_sq, double beta) {
    if (!(lambda_dot_sq > 0.0) || !(beta > 0.0))
        throw std::domain_error("mu_from_law: need lambda_dot_sq > 0, beta > 0");
    double a = beta * beta * std::exp(-2.0);
    double z = lambda_dot_sq / a;
    if (z >= kInvE)
        throw std::domain_error("mu_from_law: lambda_dot_sq/a >= e^-1, no root");
    return a * f_inverse(z);
}

double law_residual(const ScalingState& s, double beta) {
    return s.lambda_dot * s.lambda_dot +
           2.0 * s.mu * (std::log(std::sqrt(s.mu) / beta) + 1.0);
}

Trajectory integrate_scaling_ode(double lambda0, double lambda_dot0, double a, double rel_tol,
                                 double lambda_stop_frac) {
    if (!(lambda0 > 0.0)) throw std::domain_error("integrate_scaling_ode: lambda0 > 0 required");
    if (!(lambda_dot0 < 0.0))
        throw std::domain_error("integrate_scaling_ode: lambda_dot0 < 0 required");
    if (lambda_dot0 * lambda_dot0 / a >= kInvE)
        throw std::domain_error("integrate_scaling_ode: initial state outside f_inverse domain");

    using Ode = Ode45<2>;
    auto rhs = [a](double, const Ode::State& y) -> Ode::State {
        double lambda = y[0], ld = y[1];
        if (!(lambda > 0.0)) throw std::runtime_error("lambda <= 0 mid-step");
        double z = ld * ld / a;
        if (z >= kInvE) throw std::runtime_error("f_inverse domain violated mid-step");
        double lddot = (z <= 0.0) ? 0.0 : a * f_inverse(z) / lambda;
        return {ld, lddot};
    };

    Trajectory traj;
    traj.a = a;
    traj.c = fit_first_integral_c(lambda0, lambda_dot0, a);
    double lambda_min = lambda_stop_frac * lambda0;
    auto stop = [lambda_min](double, const Ode::State& y) { return y[0] <= lambda_min; };
    auto record = [&](double t, const Ode::State& y) {
        double z = y[1] * y[1] / a;
        double mu = (z > 0.0 && z < kInvE) ? a * f_inverse(z) : 0.0;
        traj.t.push_back(t);
        traj.state.push_back({y[0], y[1], mu});
    };
    Ode::Options opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = rel_tol * 1e-2;
    opt.h_init = 1e-6 * lambda0 / std::fabs(lambda_dot0);
    Ode::run(rhs, 0.0, {lambda0, lambda_dot0}, stop, record, opt);
    return traj;
}

double first_integral(double lambda, double lambda_dot, double a, double c) {
    double z = lambda_dot * lambda_dot / a;
    double lg = std::log(c / lambda);
    if (lg < 0.0) throw std::domain_error("first_integral: lambda >= c");
    return g_of(z) - 1.0 - 2.0 * std::sqrt(lg);
}

double fit_first_integral_c(double lambda, double lambda_dot, double a) {
    double z = lambda_dot * lambda_dot / a;
    double s = 0.5 * (g_of(z) - 1.0);
    return lambda * std::exp(s * s);
}

double blowup_time_quadrature(double lambda, double c, double a) {
    if (!(lambda > 0.0)) return 0.0;
    if (!(lambda < c)) throw std::domain_error("blowup_time_quadrature: lambda >= c");
    double L = std::sqrt(std::log(c / lambda));
    // integrand z e^{z-z^2}/sqrt(z+1/2) decays like e^{-z^2}; 40 units of z is
    // far below double precision already
    auto f = [](double z) { return z / std::sqrt(z + 0.5) * std::exp(z - z * z); };
    double v = integrate(f, L, L + 40.0, 1e-13, 1e-300);
    (void)a;
    return std::sqrt(2.0) * c * std::exp(0.5) * v;
}

double blowup_time_quadrature_direct(double lambda, double c, double a) {
    if (!(lambda > 0.0)) return 0.0;
    if (!(lambda < c)) throw std::domain_error("blowup_time_quadrature_direct: lambda >= c");
    (void)a;
    auto f = [c](double x) {
        double L = std::sqrt(std::log(c / x));
        return std::exp(0.5 + L) / std::sqrt(1.0 + 2.0 * L);
    };
    // endpoint x->0 grows slower than any power; split panels toward 0
    double v = 0.0;
    double hi = lambda;
    while (hi > 1e-280 * c) {
        double lo = hi * 1e-3;
        v += integrate(f, lo, hi, 1e-13, 1e-300);
        hi = lo;
        if (f(hi) * hi < 1e-18 * v) break;
    }
    return v;
}

AsymptoticRemainingTime asymptotic_profile(double lambda, double c, double a) {
    if (!(lambda > 0.0) || !(lambda < c))
        throw std::domain_error("asymptotic_profile: need 0 < lambda < c");
    (void)a;
    double lg = std::log(c / lambda);
    double L = std::sqrt(lg);
    AsymptoticRemainingTime r;
    r.unreliable = lg < 4.0;
    r.three_term = lambda / (std::sqrt(2.0) * std::pow(lg, 0.25)) * std::exp(0.5 + L) *
                   (1.0 + 1.0 / (4.0 * L) - 1.0 / (32.0 * lg));
    r.erf_form = lambda * std::exp(L) +
                 c * 0.5 * std::sqrt(M_PI) * std::exp(0.25) * std::erfc(L - 0.5);
    return r;
}

namespace {

// h''(x) = -1/(a f_inverse(x^2/a)); h and h' by quadrature from the gauge
// point x_ref (h(x_ref) = h'(x_ref) = 0).
double h_second(double x, double a) {
    double z = x * x / a;
    if (z >= kInvE) throw std::domain_error("hamiltonian: f_inverse domain violated");
    if (z <= 0.0) throw std::domain_error("hamiltonian: lambda_dot = 0 not integrable");
    return -1.0 / (a * f_inverse(z));
}

}  // namespace

double hamiltonian_energy(double lambda, double lambda_dot, double a, double x_ref) {
    if (!(lambda > 0.0)) throw std::domain_error("hamiltonian_energy: lambda > 0 required");
    auto h2 = [a](double s) { return h_second(s, a); };
    double hp = integrate(h2, x_ref, lambda_dot, 1e-13, 1e-16);
    // h(x) = int_{x_ref}^{x} (x - s) h''(s) ds
    double x = lambda_dot;
    double h = integrate([&](double s) { return (x - s) * h2(s); }, x_ref, x, 1e-13, 1e-16);
    return -lambda_dot * hp + h - std::log(lambda);
}

double fig1_analytic(double x, double a, double b) {
    if (!(x + b > 0.0)) throw std::domain_error("fig1_analytic: x + b must be positive");
    return 0.5 * std::log(a) - std::sqrt(x + b);
}

}  // namespace wavemap
