// wavemap: command-line laboratory for the collapsing equivariant wave map.
//
// Verbs: law, coords, psi, selftest, search (scan|curve|wedge), simulate,
// fig1. Every run echoes its configuration into PREFIX_config.json so results
// are reproducible; numeric CSV output carries 17 significant digits.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>
#include <vector>

#include "wavemap/chart.hpp"
#include "wavemap/io.hpp"
#include "wavemap/param_search.hpp"
#include "wavemap/radial_operator.hpp"
#include "wavemap/scaling_law.hpp"
#include "wavemap/source_term.hpp"
#include "wavemap/special.hpp"
#include "wavemap/wave_sim.hpp"

using json = nlohmann::ordered_json;
using namespace wavemap;

namespace {

int thread_budget() {
    if (const char* env = std::getenv("WAVEMAP_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return int(std::max(1u, std::thread::hardware_concurrency()));
}

void write_sidecar(const std::string& prefix, const json& cfg) {
    write_json_file(prefix + "_config.json", cfg.dump(2));
}

template <typename F>
void parallel_for(std::size_t n, F&& body) {
    int nt = std::min<std::size_t>(thread_budget(), n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) body(i);
        });
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------- law ----

struct LawArgs {
    double lambda0 = 1.0;
    double lambda_dot0 = -0.1;
    double a = 0.146;
    double lambda_stop = 1e-6;
    std::string out = "law";
};

int run_law(const LawArgs& args) {
    Trajectory tr = integrate_scaling_ode(args.lambda0, args.lambda_dot0, args.a, 1e-10,
                                          args.lambda_stop);
    double x_ref = args.lambda_dot0;
    CsvWriter csv(args.out + "_trajectory.csv", {"t", "lambda", "lambda_dot", "mu", "E"});
    std::size_t stride = std::max<std::size_t>(1, tr.state.size() / 4000);
    for (std::size_t i = 0; i < tr.state.size(); i += stride) {
        const ScalingState& s = tr.state[i];
        csv.row({tr.t[i], s.lambda, s.lambda_dot, s.mu,
                 hamiltonian_energy(s.lambda, s.lambda_dot, args.a, x_ref)});
    }
    // blowup time: elapsed plus the closed-form remainder at the end state
    double rem_end = blowup_time_quadrature(tr.state.back().lambda, tr.c, args.a) /
                     std::sqrt(args.a);
    double t_star = tr.t.back() + rem_end;
    // b of the late-time model curve, fitted over the final decade
    std::vector<SeriesPoint> series;
    for (std::size_t i = 0; i < tr.state.size(); i += stride)
        series.push_back({tr.t[i], tr.state[i].lambda, NAN, 0.0, 1.0});
    BlowupFit fit = fit_blowup(series, args.a);

    json consts;
    consts["a"] = args.a;
    consts["c"] = tr.c;
    consts["t_star"] = t_star;
    consts["b"] = fit.b;
    write_json_file(args.out + "_constants.json", consts.dump(2));
    std::printf("law: %zu states, t* = %.12g, c = %.12g, b = %.6g (rms %.3g)\n",
                tr.state.size(), t_star, tr.c, fit.b, fit.rms_residual);
    return 0;
}

// -------------------------------------------------------------- coords ----

struct CoordsArgs {
    double mu = 1e-6;
    double alpha = 0.65436;
    double beta = 1.04;
    double grid_lo = 1e-3;  // in units of x_cr
    double grid_hi = 1e3;
    int n = 2000;
    std::string out = "coords";
};

int run_coords(const CoordsArgs& args) {
    Chart chart({args.mu, args.alpha, args.beta});
    CsvWriter csv(args.out + "_dump.csv",
                  {"x", "y", "branch", "chi", "chi_combo", "A", "X", "Z", "Ycap"});
    for (int i = 0; i < args.n; ++i) {
        double fx = args.grid_lo * std::pow(args.grid_hi / args.grid_lo,
                                            double(i) / double(args.n - 1));
        double x = fx * chart.critical().x_cr;
        ChartPoint p = chart.at(x);
        csv.row_mixed({CsvWriter::format(p.x), CsvWriter::format(p.y),
                       p.branch == Branch::lower ? "lower" : "upper",
                       CsvWriter::format(p.chi), CsvWriter::format(chart.chi_combo(x)),
                       CsvWriter::format(p.A), CsvWriter::format(p.X), CsvWriter::format(p.Z),
                       CsvWriter::format(p.Y_cap)});
    }
    std::printf("coords: gamma = %.12g, x_cr = %.12g, y_cr = %.12g\n", chart.critical().gamma,
                chart.critical().x_cr, chart.critical().y_cr);
    return 0;
}

// ----------------------------------------------------------------- psi ----

struct PsiArgs {
    double mu = 1e-6;
    double lambda_dot_sq = 1e-3;
    double alpha = 0.65436;
    double beta = 1.04;
    double grid_lo = 1e-3;
    double grid_hi = 1e3;
    int n = 2000;
    std::string out = "psi";
};

int run_psi(const PsiArgs& args) {
    Chart chart({args.mu, args.alpha, args.beta});
    ModulationState st{1.0, -std::sqrt(args.lambda_dot_sq), args.mu};
    CsvWriter csv(args.out + "_dump.csv", {"x", "y", "psi", "psi1", "psi2"});
    for (int i = 0; i < args.n; ++i) {
        double fx = args.grid_lo * std::pow(args.grid_hi / args.grid_lo,
                                            double(i) / double(args.n - 1));
        double x = fx * chart.critical().x_cr;
        double y = chart.map_x_to_y(x);
        double p = psi_full(x, st, chart);
        double p1 = psi_leading(x, st, chart);
        csv.row({x, y, p, p1, p - p1});
    }
    return 0;
}

// ------------------------------------------------------------- selftest ----

int run_selftest() {
    int failures = 0;
    auto check = [&](const char* name, bool ok, double got, double want) {
        std::printf("%-34s %s (got %.12g, want %.12g)\n", name, ok ? "ok" : "FAIL", got, want);
        if (!ok) ++failures;
    };

    auto [i1, i2] = appendix2_integrals();
    check("integral y^3/(1+y^2)^3", std::fabs(i1 - 0.25) < 1e-8, i1, 0.25);
    check("integral y^3 ln(y)/(1+y^2)^3", std::fabs(i2 - 0.125) < 1e-8, i2, 0.125);

    double worst_w = 0.0;
    for (double y : {0.1, 1.0, 10.0}) {
        double W = zero_mode_w1(y) * zero_mode_w2_prime(y) - zero_mode_w2(y) * zero_mode_w1_prime(y);
        worst_w = std::max(worst_w, std::fabs(W * y - 1.0));
    }
    check("Wronskian y*(w1 w2' - w2 w1')", worst_w < 1e-12, 1.0 + worst_w, 1.0);

    double worst_g = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double z = 1e-8 * std::pow(kInvE * (1 - 1e-9) / 1e-8, double(i) / 999.0);
        double g = g_of(z);
        worst_g = std::max(worst_g, std::fabs(g - std::log(g / z)));
    }
    check("g functional equation residual", worst_g < 1e-10, worst_g, 0.0);

    for (double beta : {0.3, 1.0}) {
        SearchPoint sp = compute_I(0.0, beta, 1e-8);
        check("I(alpha=0)", std::fabs(sp.I - 1.0) < 1e-3, sp.I, 1.0);
    }

    std::printf("selftest: %s\n", failures ? "FAIL" : "all ok");
    return failures ? 2 : 0;
}

// -------------------------------------------------------------- search ----

struct ScanArgs {
    double alpha_lo = 0.1, alpha_hi = 0.95;
    int alpha_n = 18;
    double beta_lo = 0.3, beta_hi = 1.3;
    int beta_n = 11;
    double mu = 1e-8;
    std::string out = "search";
};

int run_scan(const ScanArgs& a) {
    std::size_t total = std::size_t(a.alpha_n) * a.beta_n;
    std::vector<SearchPoint> pts(total);
    std::vector<char> ok(total, 0);
    parallel_for(total, [&](std::size_t idx) {
        int i = int(idx) / a.beta_n, j = int(idx) % a.beta_n;
        double alpha = a.alpha_lo + (a.alpha_hi - a.alpha_lo) * i / std::max(1, a.alpha_n - 1);
        double beta = a.beta_lo + (a.beta_hi - a.beta_lo) * j / std::max(1, a.beta_n - 1);
        try {
            pts[idx] = compute_I(alpha, beta, a.mu);
            ok[idx] = 1;
        } catch (const std::exception&) {
            pts[idx].alpha = alpha;
            pts[idx].beta = beta;
        }
    });
    CsvWriter csv(a.out + "_scan.csv", {"alpha", "beta", "mu", "I1", "I2", "I"});
    for (std::size_t idx = 0; idx < total; ++idx) {
        const SearchPoint& p = pts[idx];
        csv.row({p.alpha, p.beta, a.mu, ok[idx] ? p.I1 : NAN, ok[idx] ? p.I2 : NAN,
                 ok[idx] ? p.I : NAN});
    }
    std::printf("scan: %zu points\n", total);
    return 0;
}

int run_curve(const ScanArgs& a) {
    auto pts = trace_curve(CurveDirection::alpha_of_beta, a.beta_lo, a.beta_hi, a.beta_n, a.mu);
    CsvWriter csv(a.out + "_curve.csv", {"beta", "alpha_lower", "alpha_upper"});
    std::size_t roots = 0;
    for (const auto& p : pts) {
        roots += p.roots.size();
        csv.row({p.abscissa, p.roots.size() > 0 ? p.roots[0] : NAN,
                 p.roots.size() > 1 ? p.roots[1] : NAN});
    }
    std::printf("curve: %zu sections, %zu roots found\n", pts.size(), roots);
    return 0;
}

int run_wedge(const ScanArgs& a) {
    WedgeSearchReport rep = find_wedge(a.beta_lo, a.beta_hi, a.mu);
    json out;
    out["found"] = rep.found;
    out["alpha0"] = rep.found ? json(rep.wedge.alpha0) : json(nullptr);
    out["beta0"] = rep.found ? json(rep.wedge.beta0) : json(nullptr);
    out["a"] = rep.found ? json(rep.wedge.a) : json(nullptr);
    out["tolerances"] = {{"alpha0", 0.01}, {"beta0", 0.02}, {"a", 0.006}};
    out["diagnostics"] = {{"I_min_scanned", rep.I_min_scanned},
                          {"alpha_at_min", rep.alpha_at_min},
                          {"beta_at_min", rep.beta_at_min},
                          {"beta_last_two_roots", rep.beta_last_two_roots},
                          {"beta_first_no_roots", rep.beta_first_no_roots}};
    write_json_file(a.out + "_wedge.json", out.dump(2));
    std::printf("wedge: %s (min I over scan = %.6g at alpha=%.4g, beta=%.4g)\n",
                rep.found ? "found" : "NOT FOUND", rep.I_min_scanned, rep.alpha_at_min,
                rep.beta_at_min);
    return 0;
}

// ------------------------------------------------------------ simulate ----

struct SimArgs {
    std::string model = "sine";
    int k = 1;
    double lambda0 = 1.0;
    double lambda_dot0 = -0.1;
    std::size_t N = 8192;
    double R = 50.0;
    double cfl = 0.5;
    double lambda_stop = 5e-3;
    double a = 0.146;
    std::string out = "sim";
    bool plot_script = false;
};

int run_simulate(const SimArgs& args) {
    KinkModel model;
    model.type = args.model == "poly" ? Nonlinearity::polynomial : Nonlinearity::sine;
    model.k = args.k;
    SimOptions opt;
    opt.N = args.N;
    opt.R = args.R;
    opt.cfl = args.cfl;
    RadialField f = make_initial(model, args.lambda0, args.lambda_dot0, opt);
    CollapseRun run = run_collapse(f, args.lambda0, args.lambda_stop, 64);

    CsvWriter series(args.out + "_series.csv", {"t", "lambda", "lambda_alt", "energy", "charge"});
    for (const auto& s : run.series) series.row({s.t, s.lambda, s.lambda_alt, s.energy, s.charge});

    json fitj;
    bool fitted = false;
    BlowupFit fit{};
    if (run.series.size() > 8 &&
        run.series.front().lambda / run.series.back().lambda > 20.0) {
        fit = fit_blowup(run.series, args.a);
        fitted = true;
        fitj = {{"t_star", fit.t_star},
                {"b", fit.b},
                {"rms_residual", fit.rms_residual},
                {"window", {{"x_min", fit.x_min}, {"x_max", fit.x_max}}},
                {"ill_conditioned", fit.ill_conditioned}};
    } else {
        fitj = {{"t_star", nullptr}, {"note", "series too short for a blowup fit"}};
    }
    write_json_file(args.out + "_fit.json", fitj.dump(2));

    CsvWriter fig(args.out + "_fig1.csv", {"x", "y", "y_analytic"});
    if (fitted) {
        for (const auto& s : run.series) {
            double rem = fit.t_star - s.t;
            if (rem <= 0.0 || s.lambda > 10.0 * run.series.back().lambda) continue;
            double x = -std::log(rem);
            double y = std::log(s.lambda / rem);
            fig.row({x, y, fig1_analytic(x, args.a, fit.b)});
        }
    }
    if (args.plot_script) {
        std::ofstream gp(args.out + "_plot.gp");
        gp << "set xlabel 'x = -ln(t*-t)'\nset ylabel 'y = ln(lambda/(t*-t))'\n"
           << "plot '" << args.out << "_fig1.csv' every ::1 using 1:2 with points title 'measured', \\\n"
           << "     '" << args.out << "_fig1.csv' every ::1 using 1:3 with lines title 'model'\n";
    }
    std::printf("simulate: %zu steps, lambda %.6g -> %.6g, charge drift %.3g\n", run.steps,
                run.series.front().lambda, run.series.back().lambda,
                std::fabs(run.series.back().charge - run.series.front().charge));
    if (fitted)
        std::printf("fit: t* = %.8g, b = %.6g, rms = %.4g\n", fit.t_star, fit.b,
                    fit.rms_residual);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for collapsing degree-1 equivariant wave maps"};
    app.require_subcommand(1);

    LawArgs law;
    auto* c_law = app.add_subcommand("law", "integrate the scaling law and export the trajectory");
    c_law->add_option("--lambda0", law.lambda0);
    c_law->add_option("--lambda-dot0", law.lambda_dot0);
    c_law->add_option("--a", law.a);
    c_law->add_option("--lambda-stop", law.lambda_stop, "stop fraction of lambda0");
    c_law->add_option("--out", law.out);

    CoordsArgs coords;
    auto* c_coords = app.add_subcommand("coords", "dump the blowup coordinate chart");
    c_coords->add_subcommand("dump")->fallthrough();
    c_coords->add_option("--mu", coords.mu);
    c_coords->add_option("--alpha", coords.alpha);
    c_coords->add_option("--beta", coords.beta);
    c_coords->add_option("--grid-lo", coords.grid_lo);
    c_coords->add_option("--grid-hi", coords.grid_hi);
    c_coords->add_option("--n", coords.n);
    c_coords->add_option("--out", coords.out);

    PsiArgs psi;
    auto* c_psi = app.add_subcommand("psi", "dump the transformed-equation source");
    c_psi->add_subcommand("dump")->fallthrough();
    c_psi->add_option("--mu", psi.mu);
    c_psi->add_option("--lambda-dot-sq", psi.lambda_dot_sq);
    c_psi->add_option("--alpha", psi.alpha);
    c_psi->add_option("--beta", psi.beta);
    c_psi->add_option("--grid-lo", psi.grid_lo);
    c_psi->add_option("--grid-hi", psi.grid_hi);
    c_psi->add_option("--n", psi.n);
    c_psi->add_option("--out", psi.out);

    auto* c_self = app.add_subcommand("selftest", "quick numerical identities; exit 2 on failure");

    ScanArgs scan;
    auto* c_search = app.add_subcommand("search", "parameter search over (alpha, beta)");
    c_search->require_subcommand(1);
    auto* c_scan = c_search->add_subcommand("scan", "grid of the reduced integrals");
    auto* c_curve = c_search->add_subcommand("curve", "roots of I = 0 per beta section");
    auto* c_wedge = c_search->add_subcommand("wedge", "fold of the I = 0 curve");
    for (auto* c : {c_scan, c_curve, c_wedge}) {
        c->add_option("--alpha-lo", scan.alpha_lo);
        c->add_option("--alpha-hi", scan.alpha_hi);
        c->add_option("--alpha-n", scan.alpha_n);
        c->add_option("--beta-lo", scan.beta_lo);
        c->add_option("--beta-hi", scan.beta_hi);
        c->add_option("--beta-n", scan.beta_n);
        c->add_option("--mu", scan.mu);
        c->add_option("--out", scan.out);
    }

    SimArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "direct radial wave simulation");
    auto* c_fig1 = app.add_subcommand("fig1", "simulate, fit and emit the comparison curve");
    for (auto* c : {c_sim, c_fig1}) {
        c->add_option("--model", sim.model)->check(CLI::IsMember({"sine", "poly"}));
        c->add_option("--k", sim.k);
        c->add_option("--lambda0", sim.lambda0);
        c->add_option("--lambda-dot0", sim.lambda_dot0);
        c->add_option("--N", sim.N);
        c->add_option("--R", sim.R);
        c->add_option("--cfl", sim.cfl);
        c->add_option("--lambda-stop", sim.lambda_stop);
        c->add_option("--a", sim.a);
        c->add_option("--out", sim.out);
        c->add_flag("--plot-script", sim.plot_script, "emit a gnuplot script");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        if (*c_law) {
            write_sidecar(law.out, json{{"verb", "law"},
                                        {"lambda0", law.lambda0},
                                        {"lambda_dot0", law.lambda_dot0},
                                        {"a", law.a},
                                        {"lambda_stop", law.lambda_stop}});
            return run_law(law);
        }
        if (*c_coords) {
            write_sidecar(coords.out, json{{"verb", "coords"},
                                           {"mu", coords.mu},
                                           {"alpha", coords.alpha},
                                           {"beta", coords.beta},
                                           {"grid_lo", coords.grid_lo},
                                           {"grid_hi", coords.grid_hi},
                                           {"n", coords.n}});
            return run_coords(coords);
        }
        if (*c_psi) {
            write_sidecar(psi.out, json{{"verb", "psi"},
                                        {"mu", psi.mu},
                                        {"lambda_dot_sq", psi.lambda_dot_sq},
                                        {"alpha", psi.alpha},
                                        {"beta", psi.beta}});
            return run_psi(psi);
        }
        if (*c_self) return run_selftest();
        if (*c_search) {
            json cfg{{"verb", "search"},
                     {"alpha", {{"lo", scan.alpha_lo}, {"hi", scan.alpha_hi}, {"n", scan.alpha_n}}},
                     {"beta", {{"lo", scan.beta_lo}, {"hi", scan.beta_hi}, {"n", scan.beta_n}}},
                     {"mu", scan.mu},
                     {"threads", thread_budget()}};
            write_sidecar(scan.out, cfg);
            if (*c_scan) return run_scan(scan);
            if (*c_curve) return run_curve(scan);
            return run_wedge(scan);
        }
        if (*c_sim || *c_fig1) {
            write_sidecar(sim.out, json{{"verb", *c_fig1 ? "fig1" : "simulate"},
                                        {"model", sim.model},
                                        {"k", sim.k},
                                        {"lambda0", sim.lambda0},
                                        {"lambda_dot0", sim.lambda_dot0},
                                        {"N", sim.N},
                                        {"R", sim.R},
                                        {"cfl", sim.cfl},
                                        {"lambda_stop", sim.lambda_stop},
                                        {"a", sim.a}});
            return run_simulate(sim);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
