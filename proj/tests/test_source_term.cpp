#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "wavemap/scaling_law.hpp"
#include "wavemap/source_term.hpp"
#include "wavemap/special.hpp"

using namespace wavemap;

namespace {

// on-shell modulation state at a given mu (law residual zero by construction)
ModulationState on_shell(double mu, double beta, double lambda = 1.0) {
    double ld2 = -2.0 * mu * (std::log(std::sqrt(mu) / beta) + 1.0);
    return {lambda, -std::sqrt(ld2), mu};
}

// advance (lambda, lambda_dot) along the law by a few classical RK4 steps
void rk4_advance(double a, double& lam, double& ld, double h, int steps) {
    auto acc = [a](double l, double d) { return a * f_inverse(d * d / a) / l; };
    for (int i = 0; i < steps; ++i) {
        double k1l = ld, k1d = acc(lam, ld);
        double k2l = ld + 0.5 * h * k1d, k2d = acc(lam + 0.5 * h * k1l, ld + 0.5 * h * k1d);
        double k3l = ld + 0.5 * h * k2d, k3d = acc(lam + 0.5 * h * k2l, ld + 0.5 * h * k2d);
        double k4l = ld + h * k3d, k4d = acc(lam + h * k3l, ld + h * k3d);
        lam += h / 6.0 * (k1l + 2 * k2l + 2 * k3l + k4l);
        ld += h / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d);
    }
}

}  // namespace

TEST_CASE("time derivatives of the chart") {
    double beta = 1.04, alpha = 0.65436;
    ModulationState st = on_shell(1e-6, beta);
    Chart chart({st.mu, alpha, beta});
    double x_cr = chart.critical().x_cr;

    SUBCASE("static rate: everything proportional to lambda_dot vanishes") {
        ModulationState still{1.0, 0.0, st.mu};
        auto d = y_time_derivatives(0.3 * x_cr, still, chart);
        CHECK(d.lambda_dy_dt == 0.0);
        // second derivative keeps its mu-proportional piece
        CHECK(d.lambda2_d2y_dt2 != 0.0);
    }

    SUBCASE("leading order at x << x_cr: lambda dy/dt ~ -lambda_dot x") {
        double x = 1e-3 * x_cr;
        auto d = y_time_derivatives(x, st, chart);
        CHECK(d.lambda_dy_dt == doctest::Approx(-st.lambda_dot * x).epsilon(1e-2));
    }

    SUBCASE("finite differences along the law match to the dropped-term order") {
        double a = beta * beta * std::exp(-2.0);
        double lnfac = std::log(a / st.mu) - 1.0;
        for (double fx : {0.02, 0.1, 0.3, 1.4, 3.0}) {
            double x0 = fx * x_cr;
            double rho = x0 * st.lambda;
            auto y_at = [&](double dt) {
                double lam = st.lambda, ld = st.lambda_dot;
                if (dt != 0.0) rk4_advance(a, lam, ld, dt / 8.0, 8);
                double mu = a * f_inverse(ld * ld / a);
                Chart c({mu, alpha, beta});
                return c.map_x_to_y(rho / lam);
            };
            double h = 2e-3;
            double fd1 = st.lambda * oracle::central_diff(y_at, 0.0, h);
            auto d = y_time_derivatives(x0, st, chart);
            // the known dropped term is lambda (dmu/dt) dy/dmu = ld x chi/(ln(a/mu)-1)
            double dropped = st.lambda_dot * x0 * chart.chi_at(x0) / lnfac;
            CHECK(fd1 - d.lambda_dy_dt ==
                  doctest::Approx(dropped)
                      .epsilon(0.02)
                      .scale(std::max(std::fabs(d.lambda_dy_dt), std::fabs(dropped))));

            double fd2 = st.lambda * st.lambda * oracle::central_diff2(y_at, 0.0, h);
            double rem_scale = std::fabs(st.lambda_dot * dropped) +
                               3.0 * std::fabs(d.lambda2_d2y_dt2) / lnfac;
            CHECK(std::fabs(fd2 - d.lambda2_d2y_dt2) < 3.0 * rem_scale + 1e-10);
        }
    }
}

TEST_CASE("psi: two assembly routes and branch continuity") {
    double beta = 1.04, alpha = 0.65436;

    SUBCASE("explicit transcription equals the assembled expression (lower branch)") {
        ModulationState st{1.0, -std::sqrt(1e-3), 1e-6};
        Chart chart({st.mu, alpha, beta});
        double x_cr = chart.critical().x_cr;
        for (int i = 0; i < 100; ++i) {
            double x = 1e-3 * x_cr * std::pow(1.0 / 1e-3, double(i) / 99.0);
            if (x >= x_cr) break;
            double a31 = psi_full(x, st, chart);
            double assembled = psi_assembled(x, st, chart);
            CHECK(a31 == doctest::Approx(assembled).epsilon(1e-8));
        }
    }

    SUBCASE("matching point: jump carried entirely by the curvature break") {
        // The map is C^1 but not C^2 at x_cr: dy/dx has its minimum (zero)
        // there, so d2y/dx2 flips sign. The source inherits the jump
        //   (x^2/y^2) (2/(1+y^2)) (1 - ld^2 x^2) [d2y/dx2],
        // and subtracting that term must leave a continuous function.
        ModulationState st{1.0, -std::sqrt(1e-3), 1e-8};
        Chart chart({st.mu, alpha, beta});
        double x_cr = chart.critical().x_cr;
        double ld2 = st.lambda_dot_sq();
        auto ypp = [&](double x) {  // curvature from one-sided finite differences
            double h = 1e-6 * x_cr;
            return (chart.dy_dx(x + h) - chart.dy_dx(x - h)) / (2.0 * h);
        };
        auto corrected = [&](double x) {
            ChartPoint p = chart.at(x);
            double opy2 = 1.0 + p.y * p.y;
            return psi_full(x, st, chart) -
                   (x * x / (p.y * p.y)) * (2.0 / opy2) * (1.0 - ld2 * x * x) * ypp(x);
        };
        double xl = x_cr * (1.0 - 5e-5), xu = x_cr * (1.0 + 5e-5);
        double raw_jump = psi_full(xu, st, chart) - psi_full(xl, st, chart);
        double corr_jump = corrected(xu) - corrected(xl);
        CHECK(std::fabs(corr_jump) < 1e-3 * std::fabs(raw_jump));
        // and the jump itself is no transcription artifact: both assembly
        // routes produce the same discontinuity
        double raw_jump_asm = psi_assembled(xu, st, chart) - psi_assembled(xl, st, chart);
        CHECK(raw_jump == doctest::Approx(raw_jump_asm).epsilon(1e-4));
    }

    SUBCASE("counter-term: no bare mu*zeta tail at large y") {
        // the naive one-parameter ansatz leaves a residual whose mu part is
        // exactly -2 mu zeta(y) (ratio 2 to mu zeta, forever); in the
        // transformed source the mu part dies off
        ModulationState st{1.0, 0.0, 1e-6};  // pure-mu state isolates that part
        Chart chart({st.mu, alpha, beta});
        double y_cr = chart.critical().y_cr;
        double prev = INFINITY;
        for (double fy : {3.0, 10.0, 30.0, 100.0}) {
            double y = fy * y_cr;
            double x = chart.map_y_to_x(y);
            double zeta = y / (1.0 + y * y);
            double ratio = std::fabs(psi_full(x, st, chart) / (st.mu * zeta));
            CHECK(ratio < prev);
            prev = ratio;
        }
        CHECK(prev < 0.05);  // the naive residual sits at 2 forever
    }

    SUBCASE("decay bound above the matching point") {
        ModulationState st = on_shell(1e-8, beta);
        Chart chart({st.mu, alpha, beta});
        double y_cr = chart.critical().y_cr;
        double ld2 = st.lambda_dot_sq();
        std::vector<double> ratios;
        for (double fy = 4.0; fy <= 512.0; fy *= 2.0) {
            double y = fy * y_cr;
            double x = chart.map_y_to_x(y);
            double bound_shape = ld2 * std::fabs(std::log(st.mu * y * y)) / (st.mu * y * y);
            ratios.push_back(std::fabs(psi_full(x, st, chart)) / bound_shape);
        }
        double C = std::max({ratios[0], ratios[1], ratios[2]});
        for (double r : ratios) CHECK(r <= 1.2 * C);  // bounded under doubling
    }

    SUBCASE("mu / lambda_dot^2 scaling separation") {
        // at fixed evaluation points psi splits into mu- and ld2-linear parts
        double mu = 1e-8, ld2 = 1e-4;
        double alpha2 = 0.65436;
        Chart chart({mu, alpha2, beta});
        Chart chart_half({0.5 * mu, alpha2, beta});
        for (double x : {0.5, 3.0, 40.0}) {
            auto mk = [](double l2, double m) {
                return ModulationState{1.0, -std::sqrt(l2), m};
            };
            double f11 = psi_full(x, mk(ld2, mu), chart);
            double f01 = psi_full(x, mk(ld2 / 2, mu), chart);
            double f00 = psi_full(x, mk(ld2 / 2, 0.5 * mu), chart_half);
            double Q = (f11 - f01) / (ld2 / 2);
            double P = (f11 - ld2 * Q) / mu;
            double pred = 0.5 * mu * P + 0.5 * ld2 * Q;
            CHECK(f00 == doctest::Approx(pred).epsilon(1e-6));
        }
    }
}

TEST_CASE("leading part psi_1") {
    double beta = 1.04, alpha = 0.65436;
    ModulationState st{1.0, -std::sqrt(1e-3), 1e-6};
    Chart chart({st.mu, alpha, beta});
    double y_cr = chart.critical().y_cr;
    REQUIRE(y_cr > 1000.0);

    SUBCASE("intermediate-zone decay exponent is 3") {
        // measured log-slope of |psi_1| between y = 10 and y = y_cr/10
        double y1 = 10.0, y2 = y_cr / 10.0;
        double p1 = std::fabs(psi_leading(chart.map_y_to_x(y1), st, chart));
        double p2 = std::fabs(psi_leading(chart.map_y_to_x(y2), st, chart));
        double slope = std::log(p1 / p2) / std::log(y2 / y1);
        CHECK(slope == doctest::Approx(3.0).epsilon(0.05));
        CHECK(p1 / p2 == doctest::Approx(std::pow(y2 / y1, 3.0)).epsilon(0.5));
    }

    SUBCASE("far-zone decay exponent is 5 (ratio across a decade)") {
        double y1 = 20.0 * y_cr, y2 = 200.0 * y_cr;
        double p1 = std::fabs(psi_leading(chart.map_y_to_x(y1), st, chart));
        double p2 = std::fabs(psi_leading(chart.map_y_to_x(y2), st, chart));
        double slope = std::log(p1 / p2) / std::log(y2 / y1);
        CHECK(slope == doctest::Approx(5.0).epsilon(0.05));
    }

    SUBCASE("moment scales like lambda_dot^2") {
        auto moment = [&](double ld2) {
            ModulationState s{1.0, -std::sqrt(ld2), 1e-6};
            Chart c({s.mu, alpha, beta});
            auto f = [&](double y) {
                double x = c.map_y_to_x(y);
                return (y / (1.0 + y * y)) * psi_leading(x, s, c) * y;
            };
            return oracle::simpson(f, 1e-4, 50.0, 20000) + oracle::simpson(f, 50.0, 5000.0, 20000);
        };
        double m1 = moment(1e-3);
        double m2 = moment(5e-4);
        CHECK(m1 / m2 == doctest::Approx(2.0).epsilon(0.05));
    }

    SUBCASE("psi_2 = psi - psi_1 is subleading in the core") {
        for (double y : {2.0, 5.0, 10.0}) {
            double x = chart.map_y_to_x(y);
            double p = psi_full(x, st, chart);
            double p1 = psi_leading(x, st, chart);
            CHECK(std::fabs(p - p1) < 0.05 * std::fabs(p1));
        }
    }
}

TEST_CASE("matching-point drift rate along the law") {
    // (1/x_cr) lambda dx_cr/dt over (-lambda_dot/ln(1/mu)) stays within [1/2, 2]
    double beta = 1.04, alpha = 0.65436;
    double a = beta * beta * std::exp(-2.0);
    for (double mu : {1e-8, 1e-10}) {
        ModulationState st = on_shell(mu, beta);
        auto xcr_at = [&](double dt) {
            double lam = st.lambda, ld = st.lambda_dot;
            if (dt != 0.0) rk4_advance(a, lam, ld, dt / 8.0, 8);
            double m = a * f_inverse(ld * ld / a);
            return Chart({m, alpha, beta}).critical().x_cr;
        };
        double x_cr = xcr_at(0.0);
        double h = 1e-3 / std::fabs(st.lambda_dot);
        double dxdt = oracle::central_diff(xcr_at, 0.0, h);
        double ratio = (st.lambda * dxdt / x_cr) / (-st.lambda_dot / std::log(1.0 / mu));
        CHECK(ratio > 0.5);
        CHECK(ratio < 2.0);
    }
}
