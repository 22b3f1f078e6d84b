#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace wavemap {

/// Adaptive Dormand-Prince 5(4) for small fixed-size systems.
/// The rhs may throw to veto a trial step (e.g. a domain violation at an
/// internal stage); the step is then retried with half the size.
template <std::size_t N>
class Ode45 {
  public:
    using State = std::array<double, N>;
    using Rhs = std::function<State(double, const State&)>;

    struct Options {
        double rel_tol = 1e-10;
        double abs_tol = 1e-12;
        double h_init = 1e-4;
        double h_min = 1e-15;
        std::size_t max_steps = 2'000'000;
    };

    /// Integrate until stop(t, y) returns true; records every accepted step.
    static void run(const Rhs& rhs, double t0, State y0,
                    const std::function<bool(double, const State&)>& stop,
                    const std::function<void(double, const State&)>& record,
                    Options opt = {}) {
        double t = t0, h = opt.h_init;
        State y = y0;
        record(t, y);
        for (std::size_t n = 0; n < opt.max_steps; ++n) {
            if (stop(t, y)) return;
            bool ok = false;
            State ynew{};
            double err = 0.0;
            try {
                err = attempt(rhs, t, y, h, ynew);
                ok = true;
            } catch (const std::exception&) {
                ok = false;
            }
            double tol = 1.0;
            if (ok) {
                tol = opt.abs_tol;
                for (std::size_t i = 0; i < N; ++i)
                    tol = std::max(tol, opt.abs_tol + opt.rel_tol * std::fabs(ynew[i]));
            }
            if (ok && err <= tol) {
                t += h;
                y = ynew;
                record(t, y);
                double grow = 0.9 * std::pow(tol / std::max(err, 1e-300), 0.2);
                h *= std::min(5.0, std::max(0.2, grow));
            } else {
                h *= ok ? std::max(0.2, 0.9 * std::pow(tol / err, 0.2)) : 0.5;
                if (h < opt.h_min) throw std::runtime_error("ode45: step size underflow");
            }
        }
        throw std::runtime_error("ode45: max step count exceeded");
    }

  private:
    static double attempt(const Rhs& rhs, double t, const State& y, double h, State& out) {
        static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        const State k1 = rhs(t, y);
        State tmp = axpy(y, h, {{{1.0 / 5, 0, 0, 0, 0, 0}}}, {&k1});
        const State k2 = rhs(t + c2 * h, tmp);
        tmp = axpy(y, h, {{{3.0 / 40, 9.0 / 40, 0, 0, 0, 0}}}, {&k1, &k2});
        const State k3 = rhs(t + c3 * h, tmp);
        tmp = axpy(y, h, {{{44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0}}}, {&k1, &k2, &k3});
        const State k4 = rhs(t + c4 * h, tmp);
        tmp = axpy(y, h, {{{19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0}}},
                   {&k1, &k2, &k3, &k4});
        const State k5 = rhs(t + c5 * h, tmp);
        tmp = axpy(y, h,
                   {{{9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0}}},
                   {&k1, &k2, &k3, &k4, &k5});
        const State k6 = rhs(t + h, tmp);
        // 5th order solution
        static const double b[6] = {35.0 / 384,    0.0,        500.0 / 1113,
                                    125.0 / 192,   -2187.0 / 6784, 11.0 / 84};
        out = y;
        const State* ks[6] = {&k1, &k2, &k3, &k4, &k5, &k6};
        for (int s = 0; s < 6; ++s)
            for (std::size_t i = 0; i < N; ++i) out[i] += h * b[s] * (*ks[s])[i];
        const State k7 = rhs(t + h, out);
        // embedded 4th order error estimate
        static const double e[7] = {35.0 / 384 - 5179.0 / 57600,
                                    0.0,
                                    500.0 / 1113 - 7571.0 / 16695,
                                    125.0 / 192 - 393.0 / 640,
                                    -2187.0 / 6784 + 92097.0 / 339200,
                                    11.0 / 84 - 187.0 / 2100,
                                    -1.0 / 40};
        const State* ks7[7] = {&k1, &k2, &k3, &k4, &k5, &k6, &k7};
        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double d = 0.0;
            for (int s = 0; s < 7; ++s) d += e[s] * (*ks7[s])[i];
            err = std::max(err, std::fabs(h * d));
        }
        return err;
    }

    struct Coef {
        std::array<double, 6> a;
    };
    static State axpy(const State& y, double h, const Coef& co,
                      std::initializer_list<const State*> ks) {
        State r = y;
        int s = 0;
        for (const State* k : ks) {
            for (std::size_t i = 0; i < N; ++i) r[i] += h * co.a[s] * (*k)[i];
            ++s;
        }
        return r;
    }
};

}  // namespace wavemap
