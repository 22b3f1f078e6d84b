#include <doctest.h>

#include <cmath>

#include "wavemap/param_search.hpp"
#include "wavemap/scaling_law.hpp"

using namespace wavemap;

// The published reference point of the reduced-orthogonality curve and the
// local model of its lower branch.
namespace ref {
constexpr double alpha0 = 0.6543626;
constexpr double beta0 = 1.0405;
constexpr double b1 = 2.54732;
constexpr double b2 = 13.8297;

double alpha_lower(double beta) {
    double db = beta0 - beta;
    double da = (-b1 + std::sqrt(b1 * b1 + 4.0 * b2 * db)) / (2.0 * b2);
    return alpha0 + da;
}
double slope(double beta) {  // dalpha/dbeta on the model
    double da = alpha_lower(beta) - alpha0;
    return -1.0 / (b1 + 2.0 * b2 * da);
}
}  // namespace ref

TEST_CASE("reduced integrals at alpha = 0") {
    for (double beta : {0.3, 0.5, 1.0}) {
        SearchPoint sp = compute_I(0.0, beta, 1e-8);
        CHECK(sp.I1 == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(std::fabs(sp.I2) < 1e-3);
        CHECK(sp.I == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("reduced integrals telescope to 1 on the regular chart region") {
    // On the exact chart the integrands are total derivatives (the chart
    // identity mu x^3 (A - alpha) = -2(yX - x) and its upper analogue make
    // them exact), so I = 1 identically wherever ln(gamma) > alpha - 1/2.
    // That leaves the zero locus empty: see the wedge search below.
    for (double alpha : {0.2, 0.5, ref::alpha0}) {
        for (double beta : {0.8, ref::beta0}) {
            SearchPoint sp = compute_I(alpha, beta, 1e-8);
            CHECK(sp.I == doctest::Approx(1.0).epsilon(1e-6));
        }
    }

    SUBCASE("insensitive to the evaluation mu") {
        SearchPoint a = compute_I(0.8, 0.8, 1e-6);
        SearchPoint b = compute_I(0.8, 0.8, 1e-8);
        CHECK(std::fabs(a.I - b.I) < 0.01 * std::max(1.0, std::fabs(a.I)));
        SearchPoint c = compute_I(ref::alpha0, ref::beta0, 1e-6);
        SearchPoint d = compute_I(ref::alpha0, ref::beta0, 1e-8);
        CHECK(std::fabs(c.I - d.I) < 0.01 * std::max(1.0, std::fabs(c.I)));
    }
}

TEST_CASE("curve tracing and wedge search report the measured structure") {
    SUBCASE("no roots anywhere along representative cross sections") {
        // includes the published no-solution regions (alpha < alpha0 - 0.05
        // and beta > beta0 + 0.05), which hold vacuously
        auto pts = trace_curve(CurveDirection::alpha_of_beta, 0.4, 1.2, 5, 1e-8, 24);
        for (const auto& p : pts) CHECK(p.roots.empty());
        auto pts2 = trace_curve(CurveDirection::beta_of_alpha, ref::alpha0 - 0.05,
                                ref::alpha0 - 0.05, 1, 1e-8, 24);
        CHECK(pts2.front().roots.empty());
    }

    SUBCASE("wedge search cannot find a fold and says so quantitatively") {
        WedgeSearchReport rep = find_wedge(0.4, 1.2, 1e-8, 0.1, 0.95);
        CHECK_FALSE(rep.found);
        CHECK(rep.I_min_scanned == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("energy of the deformed kink") {
    SUBCASE("vanishes with the modulation") {
        ModulationState tiny{1.0, -1e-6, 1e-12};
        CHECK(std::fabs(energy_delta(0.65436, 1.04, tiny)) < 1e-8);
    }

    SUBCASE("scales like ld2 ln(1/ld2) under halving") {
        double prev = NAN;
        for (double ld2 : {1e-3, 5e-4, 2.5e-4}) {
            double mu = mu_from_law(ld2, ref::beta0);
            ModulationState st{1.0, -std::sqrt(ld2), mu};
            double dE = energy_delta(ref::alpha0, ref::beta0, st);
            CHECK(dE > 0.0);
            if (!std::isnan(prev)) {
                double ratio = prev / dE;
                CHECK(ratio > 1.8);
                CHECK(ratio < 2.4);
            }
            prev = dE;
        }
    }

    SUBCASE("minimal at the fold along the published branch model") {
        double prev = INFINITY;
        for (double db : {0.10, 0.06, 0.03, 0.01, 0.0}) {
            double beta = ref::beta0 - db;
            double ld2 = 1e-3;
            ModulationState st{1.0, -std::sqrt(ld2), mu_from_law(ld2, beta)};
            double dE = energy_delta(ref::alpha_lower(beta), beta, st);
            CHECK(dE < prev);
            prev = dE;
        }
    }
}

TEST_CASE("energy gradients") {
    ModulationState st{1.0, -std::sqrt(1e-3), 1e-6};

    SUBCASE("closed forms match finite differences of the energy") {
        // note: (0.8, 0.8) sits on the degeneracy locus ln(gamma) = alpha-1/2
        // (Z_cr ~ -0.03) where the chart breaks; regular points are used
        for (auto [al, be] : std::initializer_list<std::pair<double, double>>{
                 {0.5, 0.8}, {ref::alpha0, 1.04}, {0.3, 1.0}}) {
            EnergyGradients g = energy_gradients(al, be, st);
            double h = 0.004;
            double fa = (energy_delta(al + h, be, st) - energy_delta(al - h, be, st)) / (2 * h);
            double fb = (energy_delta(al, be + h, st) - energy_delta(al, be - h, st)) / (2 * h);
            CHECK(g.dE_dalpha == doctest::Approx(fa).epsilon(0.10));
            CHECK(g.dE_dbeta == doctest::Approx(fb).epsilon(0.10));
        }
    }

    SUBCASE("descent direction at the fold is negative, stable in mu") {
        for (double mu : {1e-6, 1e-8}) {
            ModulationState s{1.0, -std::sqrt(1e-3), mu};
            double phi = phi_along_curve(ref::alpha0, ref::beta0, ref::slope(ref::beta0), s);
            CHECK(phi < 0.0);
        }
        // and along the branch model close to the fold
        for (double db : {0.02, 0.05}) {
            double beta = ref::beta0 - db;
            double phi = phi_along_curve(ref::alpha_lower(beta), beta, ref::slope(beta), st);
            CHECK(phi < 0.0);
        }
    }
}
