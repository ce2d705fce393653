#ifndef CAPKIN_INTEGRATE_HPP
#define CAPKIN_INTEGRATE_HPP

#include "capkin/errors.hpp"
#include "capkin/reduced.hpp"
#include "capkin/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace capkin {

struct SimOptions {
    double abs_tol = tol::ode_abs;
    double rel_tol = tol::ode_rel;
    double h_init = 0.0;            // 0: choose automatically
    std::int64_t max_steps = 50'000'000;
    /// When positive, states are recorded only at multiples of sample_dt
    /// (plus t = 0 and t = t_end); steps are shortened to land on the grid
    /// exactly. When zero, every accepted step is recorded.
    double sample_dt = 0.0;
};

/// Time-stamped states plus integrator statistics.
struct Trajectory {
    std::vector<double> t;
    std::vector<std::vector<double>> x;
    std::int64_t accepted = 0;
    std::int64_t rejected = 0;
    /// max over recorded steps of |I(n(t)) − I(n(0))|.
    double max_drift = 0.0;

    const std::vector<double>& last() const { return x.back(); }
};

/// Adaptive Dormand–Prince 5(4) integration of the reduced system over
/// [0, t_end]. States are kept inside the box C: excursions within the
/// membership slack are clipped back, anything larger aborts with
/// BoxViolationError (an integrator-accuracy failure, not a model
/// property — exact solutions never leave the box).
inline Trajectory simulate(const ReducedSystem& sys, const std::vector<double>& n0, double t_end,
                           const SimOptions& opts = {}) {
    if (!(t_end >= 0.0) || !std::isfinite(t_end))
        throw InputError("t_end must be a nonnegative finite number");
    sys.check_in_box(n0);
    const int m = sys.dim();
    const auto& cap = sys.capacities();

    // Dormand–Prince 5(4) tableau (autonomous rhs, so stage times are not
    // needed); the last row of a is also the 5th-order weight vector b,
    // making the method FSAL.
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b − b*: difference between the 5th- and 4th-order weights.
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    std::vector<double> y = n0;
    for (int i = 0; i < m; ++i)
        y[i] = std::min(std::max(y[i], 0.0), cap[i]);
    const double level0 = level_of(y);

    Trajectory traj;
    traj.t.push_back(0.0);
    traj.x.push_back(y);

    if (t_end == 0.0)
        return traj;

    std::vector<double> k1 = sys.rhs(y), k2(m), k3(m), k4(m), k5(m), k6(m), k7(m), ytmp(m),
                        y5(m), err(m);

    const auto scaled_norm = [&](const std::vector<double>& v, const std::vector<double>& ya,
                                 const std::vector<double>& yb) {
        double sum = 0.0;
        for (int i = 0; i < m; ++i) {
            const double sc = opts.abs_tol + opts.rel_tol * std::max(std::fabs(ya[i]), std::fabs(yb[i]));
            const double q = v[i] / sc;
            sum += q * q;
        }
        return std::sqrt(sum / m);
    };

    double h = opts.h_init;
    if (h <= 0.0) {
        const double d0 = scaled_norm(y, y, y);
        const double d1 = scaled_norm(k1, y, y);
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * (d0 / d1);
        h = std::min(h, t_end);
    }
    const double h_floor = 1e-14 * std::max(1.0, t_end);

    double t = 0.0;
    double next_sample = opts.sample_dt > 0.0 ? opts.sample_dt : 0.0;
    const double t_eps = 1e-12 * std::max(1.0, t_end);

    while (t_end - t > t_eps) {
        if (traj.accepted + traj.rejected >= opts.max_steps)
            throw Error("integration exceeded the maximum step count (" +
                        std::to_string(opts.max_steps) + ")");
        bool hit_end = false, hit_sample = false;
        if (h >= t_end - t) {
            h = t_end - t;
            hit_end = true;
        }
        if (opts.sample_dt > 0.0 && next_sample - t > 0.0 && h >= next_sample - t - t_eps) {
            if (next_sample - t < h) {
                h = next_sample - t;
                hit_end = false;
            }
            hit_sample = true;
        }
        if (h < h_floor)
            throw StepSizeUnderflowError("step size underflow at t = " + std::to_string(t) +
                                         " (h = " + std::to_string(h) + ")");

        for (int i = 0; i < m; ++i)
            ytmp[i] = y[i] + h * a21 * k1[i];
        k2 = sys.rhs_clamped(ytmp);
        for (int i = 0; i < m; ++i)
            ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = sys.rhs_clamped(ytmp);
        for (int i = 0; i < m; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = sys.rhs_clamped(ytmp);
        for (int i = 0; i < m; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = sys.rhs_clamped(ytmp);
        for (int i = 0; i < m; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = sys.rhs_clamped(ytmp);
        for (int i = 0; i < m; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        k7 = sys.rhs_clamped(y5);
        for (int i = 0; i < m; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);

        const double err_norm = scaled_norm(err, y, y5);
        if (err_norm <= 1.0) {
            t = hit_end ? t_end : (hit_sample ? next_sample : t + h);
            bool clipped = false;
            for (int i = 0; i < m; ++i) {
                if (y5[i] < -tol::state || y5[i] > cap[i] + tol::state)
                    throw BoxViolationError(
                        "state left the box at t = " + std::to_string(t) + ": n" +
                        std::to_string(i + 1) + " = " + std::to_string(y5[i]) +
                        "; tighten the integrator tolerances");
                const double cl = std::min(std::max(y5[i], 0.0), cap[i]);
                clipped = clipped || cl != y5[i];
                y5[i] = cl;
            }
            y = y5;
            k1 = clipped ? sys.rhs(y) : k7;   // FSAL, unless clipping moved the state
            ++traj.accepted;
            traj.max_drift = std::max(traj.max_drift, std::fabs(level_of(y) - level0));
            const bool record = opts.sample_dt <= 0.0 || hit_sample || hit_end;
            if (record) {
                traj.t.push_back(t);
                traj.x.push_back(y);
            }
            if (hit_sample)
                next_sample += opts.sample_dt;
            const double grow = 0.9 * std::pow(std::max(err_norm, 1e-10), -0.2);
            h *= std::min(5.0, std::max(0.2, grow));
        } else {
            ++traj.rejected;
            h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
        }
    }
    return traj;
}

} // namespace capkin

#endif
