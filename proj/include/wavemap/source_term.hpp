#pragma once

#include "wavemap/chart.hpp"

namespace wavemap {

/// Modulation data entering the source term; mu duplicates the chart's mu by
/// construction (the chart is built at the state's mu).
struct ModulationState {
    double lambda;
    double lambda_dot;  // < 0 on collapsing trajectories
    double mu;          // lambda*lambda''
    double lambda_dot_sq() const { return lambda_dot * lambda_dot; }
};

struct TimeDerivatives {
    double lambda_dy_dt;    // lambda * dy/dt
    double lambda2_d2y_dt2; // lambda^2 * d2y/dt2
};

/// Closed forms of the chart's time derivatives at fixed rho, with the
/// O(x^3 lambda d(mu)/dt) remainders dropped.
TimeDerivatives y_time_derivatives(double x, const ModulationState& state, const Chart& chart);

/// The inhomogeneous source of the transformed equation. Below the matching
/// point this is the explicit transcription; above, the lambda_dot^2 part in
/// its large-y reduced form plus the mu part assembled from the general
/// expression.
double psi_full(double x, const ModulationState& state, const Chart& chart);

/// Same quantity assembled from the general expression (chi, chi_combo and
/// the time derivatives) on both branches; independent code path for tests.
double psi_assembled(double x, const ModulationState& state, const Chart& chart);

/// Leading localized part psi_1; psi_2 = psi_full - psi_1.
double psi_leading(double x, const ModulationState& state, const Chart& chart);

}  // namespace wavemap
