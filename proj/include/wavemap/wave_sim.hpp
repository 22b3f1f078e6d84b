#pragma once

#include <optional>
#include <vector>

#include "wavemap/radial_operator.hpp"

namespace wavemap {

/// Radial field on [0, R] with pinned ends: u(0) = U(0), u(R) frozen at its
/// initial value. Grid is sinh-graded toward the origin.
struct RadialField {
    KinkModel model;
    std::vector<double> rho;  // rho[0] = 0, rho[N] = R
    std::vector<double> u;
    std::vector<double> v;    // du/dt, synchronous with u
    double t = 0.0;
    double h_min = 0.0;  // smallest spacing; unit-speed CFL bound for dt

    double R() const { return rho.back(); }
};

struct SimOptions {
    std::size_t N = 8192;    // number of cells (grid has N+1 nodes)
    double R = 50.0;         // domain size
    double cfl = 0.5;
    double sinh_bias = 6.0;  // grading strength; larger = finer near 0
};

/// Shrunk kink with collapsing velocity: u = U(rho/lambda0),
/// v = -2 (lambda_dot0/lambda0) zeta(rho/lambda0).
RadialField make_initial(const KinkModel& model, double lambda0, double lambda_dot0,
                         const SimOptions& opt = {});

/// One kick-drift-kick leapfrog step. dt must respect the CFL bound.
void step(RadialField& f, double dt);

double cfl_dt(const RadialField& f, double cfl);

/// Energy of the field (conserved by the continuum flow).
double field_energy(const RadialField& f);

/// Topological charge (u(R) - u(0)) normalized by the vacuum separation.
double topological_charge(const RadialField& f);

/// Scale estimate: interpolated rho where u crosses the kink midpoint value
/// (U(1)); empty if there is no crossing (map dispersed).
std::optional<double> extract_lambda(const RadialField& f);

/// Secondary estimate from the origin behaviour of the profile.
std::optional<double> extract_lambda_alt(const RadialField& f);

struct SeriesPoint {
    double t;
    double lambda;
    double lambda_alt;
    double energy;
    double charge;
};

struct CollapseRun {
    std::vector<SeriesPoint> series;
    double dt;
    std::size_t steps = 0;
    bool collapsed = false;   // reached the target decade count
    bool dispersed = false;
};

/// Advance until lambda falls below lambda_stop_frac * lambda0 (or the core
/// leaves the resolvable scale / the midpoint crossing disappears).
CollapseRun run_collapse(RadialField f, double lambda0, double lambda_stop_frac = 5e-3,
                         std::size_t record_every = 64, double t_max = 1e9);

struct BlowupFit {
    double t_star = 0.0;
    double b = 0.0;
    double rms_residual = 0.0;
    double x_min = 0.0;  // fit window in x = -ln(t*-t)
    double x_max = 0.0;
    bool ill_conditioned = false;  // window shorter than one decade of lambda
};

/// Joint (t*, b) fit of ln(lambda/(t*-t)) = (1/2) ln a - sqrt(x+b) with
/// a fixed, over the final decade of the series.
BlowupFit fit_blowup(const std::vector<SeriesPoint>& series, double a = 0.146);

}  // namespace wavemap
