#pragma once

#include <vector>

namespace wavemap {

/// One point of the modulation trajectory: scale, its rate, and mu = lambda*lambda''.
struct ScalingState {
    double lambda;
    double lambda_dot;
    double mu;
};

struct LawConstants {
    double a;       // universal constant, a = beta^2 e^-2 from the parameter search
    double c;       // integration constant of the first integral
    double t_star;  // blowup time
};

struct Trajectory {
    std::vector<double> t;
    std::vector<ScalingState> state;
    double a;
    double c;  // fitted from the initial point via the first integral
};

/// Solve lambda_dot^2 + 2 mu [ln(sqrt(mu)/beta) + 1] = 0 for mu on the branch
/// mu -> 0 as lambda_dot^2 -> 0. Equivalent to mu = a f_inverse(lambda_dot^2/a)
/// with a = beta^2 e^-2. Throws when lambda_dot^2/a >= e^-1 (no root).
double mu_from_law(double lambda_dot_sq, double beta);

/// Residual of the law at a state: lambda_dot^2 + 2 mu [ln(sqrt(mu)/beta)+1].
double law_residual(const ScalingState& s, double beta);

/// Integrate the scaling ODE lambda*lambda'' = a f_inverse(lambda_dot^2/a)
/// from (lambda0, lambda_dot0 < 0) until lambda <= lambda_stop_frac*lambda0.
Trajectory integrate_scaling_ode(double lambda0, double lambda_dot0, double a,
                                 double rel_tol = 1e-10, double lambda_stop_frac = 1e-6);

/// First integral g(lambda_dot^2/a) - 1 - 2 sqrt(ln(c/lambda)); the constant c
/// making it vanish at a given state.
double first_integral(double lambda, double lambda_dot, double a, double c);
double fit_first_integral_c(double lambda, double lambda_dot, double a);

/// Scaled remaining time sqrt(a)*(t*-t) as a function of lambda, by adaptive
/// quadrature of the closed-form solution. Requires lambda < c.
double blowup_time_quadrature(double lambda, double c, double a);

/// Same quantity directly in the original variable (pre-substitution form);
/// used to cross-check the change of variables.
double blowup_time_quadrature_direct(double lambda, double c, double a);

struct AsymptoticRemainingTime {
    double three_term;    // expansion in inverse powers of sqrt(ln(c/lambda))
    double erf_form;      // closed form via the error function
    bool unreliable;      // set when ln(c/lambda) < 4
};

/// Two approximations of sqrt(a)*(t*-t): the three-term large-log expansion
/// and the erf-based formula.
AsymptoticRemainingTime asymptotic_profile(double lambda, double c, double a);

/// Energy of the law's Hamiltonian form, E = -ld h'(ld) + h(ld) - ln(lambda),
/// with h''(x) = -1/(a f_inverse(x^2/a)) and gauge h(x_ref) = h'(x_ref) = 0.
/// Only differences of E along a trajectory are meaningful.
double hamiltonian_energy(double lambda, double lambda_dot, double a, double x_ref);

/// The late-time model curve y = (1/2) ln(a) - sqrt(x+b).
double fig1_analytic(double x, double a, double b);

}  // namespace wavemap
