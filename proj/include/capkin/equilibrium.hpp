#ifndef CAPKIN_EQUILIBRIUM_HPP
#define CAPKIN_EQUILIBRIUM_HPP

#include "capkin/errors.hpp"
#include "capkin/integrate.hpp"
#include "capkin/reduced.hpp"
#include "capkin/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace capkin {

struct EqOptions {
    /// Residual criterion on ‖rhs‖∞; 0 means the scale-aware default
    /// tol::eq_scale * (1 + max_i c_i).
    double tol_eq = 0.0;
    /// Total integration time allowed for settling before giving up.
    double settle_budget = 2e4;
    int max_newton = 60;
    SimOptions sim;
};

struct EquilibriumResult {
    double s = 0.0;               // level of the compatibility class
    std::vector<double> e;        // the equilibrium point
    double residual_inf = 0.0;    // ‖rhs(e)‖∞
    int newton_iterations = 0;
    double settle_time = 0.0;     // integration time spent settling
};

namespace detail {

/// Dense LU solve with partial pivoting; a and b are overwritten. Returns
/// false when the matrix is numerically singular.
inline bool lu_solve(std::vector<std::vector<double>>& a, std::vector<double>& b) {
    const int n = static_cast<int>(a.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col]))
                piv = r;
        if (std::fabs(a[piv][col]) < 1e-300)
            return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0)
                continue;
            for (int k = col; k < n; ++k)
                a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < n; ++k)
            s -= a[r][k] * b[k];
        b[r] = s / a[r][r];
    }
    return true;
}

inline double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::fabs(x));
    return m;
}

/// One damped Newton attempt on the bordered system
///   [ J  1 ] [δ]   [−f]
///   [ 1ᵀ 0 ] [λ] = [ 0 ],
/// which inverts J on the tangent space {Σδ = 0} (J itself is singular:
/// its columns sum to zero). Backtracks until the iterate stays in the box
/// and the residual decreases. Returns true when tol reached.
inline bool newton_polish(const ReducedSystem& sys, std::vector<double>& x, double tol_eq,
                          int max_iter, int& iterations) {
    const int m = sys.dim();
    const auto& cap = sys.capacities();
    std::vector<double> f = sys.rhs(x);
    double r = inf_norm(f);
    for (int it = 0; it < max_iter && r > tol_eq; ++it) {
        ++iterations;
        const auto J = sys.jacobian(x);
        std::vector<std::vector<double>> a(m + 1, std::vector<double>(m + 1, 0.0));
        std::vector<double> b(m + 1, 0.0);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j)
                a[i][j] = J[i][j];
            a[i][m] = 1.0;
            a[m][i] = 1.0;
            b[i] = -f[i];
        }
        if (!lu_solve(a, b))
            return false;
        bool stepped = false;
        for (double alpha = 1.0; alpha > 1e-9; alpha *= 0.5) {
            std::vector<double> xn(m);
            bool inside = true;
            for (int i = 0; i < m; ++i) {
                xn[i] = x[i] + alpha * b[i];
                inside = inside && xn[i] >= 0.0 && xn[i] <= cap[i];
            }
            if (!inside)
                continue;
            std::vector<double> fn = sys.rhs(xn);
            const double rn = inf_norm(fn);
            if (rn < r * (1.0 - 1e-4 * alpha) || rn <= tol_eq) {
                x = std::move(xn);
                f = std::move(fn);
                r = rn;
                stepped = true;
                break;
            }
        }
        if (!stepped)
            return false;
    }
    return r <= tol_eq;
}

inline EquilibriumResult settle_from(const ReducedSystem& sys, std::vector<double> x,
                                     double s_target, const EqOptions& opts) {
    const int m = sys.dim();
    const auto& cap = sys.capacities();
    double max_cap = 0.0;
    for (double c : cap)
        max_cap = std::max(max_cap, c);
    const double tol_eq = opts.tol_eq > 0.0 ? opts.tol_eq : tol::eq_scale * (1.0 + max_cap);
    const double newton_threshold = std::max(1e-6 * (1.0 + max_cap), 10.0 * tol_eq);

    EquilibriumResult res;
    res.s = s_target;

    double chunk = 5.0;
    for (;;) {
        double r = inf_norm(sys.rhs(x));
        if (r <= newton_threshold) {
            std::vector<double> polished = x;
            if (newton_polish(sys, polished, tol_eq, opts.max_newton, res.newton_iterations)) {
                // Re-project onto the compatibility class; the adjustment is
                // at roundoff scale.
                const double shift = (s_target - level_of(polished)) / m;
                for (int i = 0; i < m; ++i)
                    polished[i] = std::min(std::max(polished[i] + shift, 0.0), cap[i]);
                res.e = std::move(polished);
                res.residual_inf = inf_norm(sys.rhs(res.e));
                return res;
            }
        }
        if (res.settle_time >= opts.settle_budget) {
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "equilibrium search did not converge: residual %.3e after %g time "
                          "units of settling (target %.3e)",
                          r, res.settle_time, tol_eq);
            throw NoConvergenceError(msg);
        }
        SimOptions sim = opts.sim;
        const double T = std::min(chunk, opts.settle_budget - res.settle_time + 1.0);
        sim.sample_dt = T;   // endpoint only
        Trajectory traj = simulate(sys, x, T, sim);
        x = traj.last();
        res.settle_time += T;
        chunk = std::min(chunk * 2.0, 200.0);
    }
}

} // namespace detail

/// The unique equilibrium of the compatibility class at level s: integrates
/// from the uniform-proportional start n_i = s·c_i/I(c), then polishes with
/// damped Newton restricted to the tangent space {Σδ = 0}. The levels 0 and
/// I(c) yield the trivial equilibria 0 and c exactly.
inline EquilibriumResult find_equilibrium(const ReducedSystem& sys, double s,
                                          const EqOptions& opts = {}) {
    const int m = sys.dim();
    const double total = sys.total_capacity();
    if (!std::isfinite(s) || s < -1e-12 * total || s > total * (1.0 + 1e-12))
        throw InputError("level s = " + std::to_string(s) + " outside [0, " +
                         std::to_string(total) + "]");
    if (s <= 0.0) {
        EquilibriumResult res;
        res.s = 0.0;
        res.e.assign(m, 0.0);
        res.residual_inf = detail::inf_norm(sys.rhs(res.e));
        return res;
    }
    if (s >= total) {
        EquilibriumResult res;
        res.s = total;
        res.e = sys.capacities();
        res.residual_inf = detail::inf_norm(sys.rhs(res.e));
        return res;
    }
    std::vector<double> x(m);
    for (int i = 0; i < m; ++i)
        x[i] = s * sys.capacities()[i] / total;
    return detail::settle_from(sys, std::move(x), s, opts);
}

/// Equilibrium reached from a given start, staying in its compatibility
/// class L_{I(n0)}.
inline EquilibriumResult settle_to_equilibrium(const ReducedSystem& sys,
                                               const std::vector<double>& n0,
                                               const EqOptions& opts = {}) {
    sys.check_in_box(n0);
    return detail::settle_from(sys, n0, level_of(n0), opts);
}

} // namespace capkin

#endif
