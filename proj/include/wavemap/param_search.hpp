#pragma once

#include <optional>
#include <vector>

#include "wavemap/chart.hpp"
#include "wavemap/source_term.hpp"

namespace wavemap {

struct SearchPoint {
    double alpha = 0.0;
    double beta = 0.0;
    double mu_eval = 0.0;
    double I1 = 0.0;
    double I2 = 0.0;
    double I = 0.0;
    double E = 0.0;
    double dE_dalpha = 0.0;
    double dE_dbeta = 0.0;
};

struct WedgePoint {
    double alpha0;
    double beta0;
    double a;  // beta0^2 e^-2
};

/// The reduced orthogonality integrals in the large-y form, integrated in
/// z = x/x_cr over the two branches of the chart.
SearchPoint compute_I(double alpha, double beta, double mu_eval = 1e-8);

struct CurvePoint {
    double abscissa;              // beta (alpha_of_beta) or alpha (beta_of_alpha)
    std::vector<double> roots;    // 0, 1 or 2 ordinate roots, ascending
};

enum class CurveDirection { alpha_of_beta, beta_of_alpha };

/// Root structure of I = 0 along one family of cross sections.
std::vector<CurvePoint> trace_curve(CurveDirection direction, double lo, double hi, int steps,
                                    double mu_eval = 1e-8, int scan_points = 48);

struct WedgeSearchReport {
    bool found = false;
    WedgePoint wedge{0.0, 0.0, 0.0};
    // quantitative diagnostics, also filled when the fold is not found
    double beta_last_two_roots = 0.0;   // largest beta with a two-root cross section
    double beta_first_no_roots = 0.0;   // smallest beta with none
    double I_min_scanned = 0.0;         // global min of I over the scanned box
    double alpha_at_min = 0.0;
    double beta_at_min = 0.0;
};

/// Fold of the double-valued curve: bisection on beta of the two-to-zero
/// root-count transition, refined by a local quadratic fit of min_alpha I.
WedgeSearchReport find_wedge(double beta_lo = 0.2, double beta_hi = 1.4, double mu_eval = 1e-8,
                             double alpha_lo = 0.05, double alpha_hi = 0.999);

/// Regularized energy of the deformed kink: delta E = E(alpha,beta; state) - E(kink).
/// E is evaluated in the rescaled radial variable, so it depends on the state
/// only through mu (the chart) and lambda_dot^2.
double energy_delta(double alpha, double beta, const ModulationState& state);

struct EnergyGradients {
    double dE_dalpha;
    double dE_dbeta;
};

/// Closed-form gradients of the energy (lambda_dot^2-proportional parts).
EnergyGradients energy_gradients(double alpha, double beta, const ModulationState& state);

/// Phi = dE/dbeta + dE/dalpha * dalpha/dbeta along a curve branch.
double phi_along_curve(double alpha, double beta, double dalpha_dbeta,
                       const ModulationState& state);

}  // namespace wavemap
