#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace wavemap {

/// A function sampled on a strictly increasing radial grid, with log-space
/// trapezoid weights for integrals against y dy.
struct RadialProfile {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> weights;  // w_i = y_i^2 dt_i, so sum w_i f_i = int f y dy

    std::size_t size() const { return grid.size(); }

    static RadialProfile log_grid(double y_min = 1e-5, double y_max = 1e6, std::size_t n = 8192);
    static RadialProfile sample(const std::function<double(double)>& f, double y_min = 1e-5,
                                double y_max = 1e6, std::size_t n = 8192);

    /// sum of w_i * values_i (the profile's own quadrature)
    double integral() const;
};

enum class Nonlinearity { sine, polynomial };

/// Static kink data for the radial semilinear wave equation
/// u_tt = Laplace(u) - f(u)/rho^2.
struct KinkModel {
    Nonlinearity type = Nonlinearity::sine;
    int k = 1;  // equivariance degree (sine model)

    double f(double u) const;        // nonlinearity
    double f_prime(double u) const;  // its derivative
    double F(double u) const;        // potential, F' = f
    double kink(double rho) const;   // static profile U
    double zero_mode(double rho) const;  // (1/2) rho U'(rho)
    double u_origin() const;         // U(0)
    double u_infinity() const;       // limit at infinity
};

/// L w = -(1/y)(y w')' + f'(U) w / y^2 by centered differences on the
/// profile's (generally non-uniform) grid. End points are copied from their
/// neighbours (one-sided values are not used by the tests).
RadialProfile apply_L(const RadialProfile& w, const KinkModel& model);

/// Richardson estimate of the stencil error of apply_L: largest weighted gap
/// between the full-grid and every-other-node evaluations. A coarse grid for
/// the given profile shows up as a large value.
double apply_L_error_estimate(const RadialProfile& w, const KinkModel& model);

/// The two explicit solutions of L w = 0 for the sine k=1 model:
/// w1 = y/(1+y^2) (the zero mode), w2 = y/2 - 1/(2y) + 2 y ln y/(1+y^2).
double zero_mode_w1(double y);
double zero_mode_w2(double y);
double zero_mode_w1_prime(double y);
double zero_mode_w2_prime(double y);

struct GreenResult {
    RadialProfile w;
    bool unbounded = false;      // solvability violated
    double growth_coefficient = 0.0;  // deficit int w1 psi y dy driving the w2 admixture
};

/// Bounded-at-infinity solution of L W = psi by variation of constants:
/// W = c1 w1 + w1 int_0^y w2 psi s ds + w2 int_y^inf w1 psi s ds.
/// If the solvability integral is nonzero the result is flagged unbounded
/// (w2-singular at the origin) and the deficit reported.
GreenResult green_solve(const RadialProfile& psi, double c1 = 0.0, double solv_tol = 1e-8);

/// int_0^inf y zeta psi dy via the profile's quadrature plus a power-law tail
/// estimate from the last decade of samples.
struct SolvabilityResult {
    double value;
    double tail_estimate;
    bool converged;  // tail below 1e-3 of the head
};
SolvabilityResult solvability_integral(const RadialProfile& psi);

/// Evaluates the reduced solvability condition both ways: the radial integral
/// in the leading (y -> x) approximation and the closed form
/// lambda_dot^2 + 2 mu [ln(sqrt(mu)/beta) + 1].
struct ReducedSolvability {
    double integral;
    double closed_form;
};
ReducedSolvability reduced_solvability(double mu, double lambda_dot_sq, double beta);

/// The two exact integrals behind the closed form:
/// int y^3/(1+y^2)^3 dy = 1/4 and int y^3 ln y/(1+y^2)^3 dy = 1/8.
std::pair<double, double> appendix2_integrals();

/// int_0^R zeta (zeta + x zeta') x dx: tends to 1/2 for the sine k=1 model
/// and to 0 for the polynomial one.
double scaling_pairing(double R, const KinkModel& model);

/// Serialize a profile as CSV with columns y,value.
void write_profile_csv(const std::string& path, const RadialProfile& profile);

}  // namespace wavemap
