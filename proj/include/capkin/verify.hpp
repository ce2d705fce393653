#ifndef CAPKIN_VERIFY_HPP
#define CAPKIN_VERIFY_HPP

#include "capkin/equilibrium.hpp"
#include "capkin/errors.hpp"
#include "capkin/integrate.hpp"
#include "capkin/reduced.hpp"
#include "capkin/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace capkin {

struct VerifyOptions {
    std::uint64_t seed = 0;
    double t_end = 50.0;
    int samples = 201;              // shared time grid for trajectory pairs
    int equilibrium_levels = 10;
    int equilibrium_starts = 10;
    int jacobian_samples = 50;
    int ordered_pairs = 100;
    int unordered_pairs = 100;
    int boundary_grid = 11;
    int persistence_trials = 20;
    /// End of the strict-order window; 0 means t_end.
    double strict_window_end = 0.0;
    EqOptions eq;
    SimOptions sim;
};

// ---- single-pair verifiers ------------------------------------------------

struct MonotonicityReport {
    bool pass = true;
    bool strict_checked = false;
    /// max over samples and coordinates of ϱ(t,a)_i − ϱ(t,b)_i (should be ≤ 0
    /// up to roundoff).
    double max_weak_violation = 0.0;
    /// min over the strict window of min_i [ϱ(t,b)_i − ϱ(t,a)_i].
    double min_strict_gap = std::numeric_limits<double>::infinity();
    double first_violation_t = -1.0;
    int first_violation_coord = 0;  // 1-based; 0 = none
};

/// Order preservation: a ≤ b componentwise implies ϱ(t,a) ≤ ϱ(t,b) at every
/// shared sample; when a ≠ b the order must be strict (margin
/// tol::strict_margin) from tol::t_strict to the end of the strict window.
inline MonotonicityReport verify_monotonicity(const ReducedSystem& sys,
                                              const std::vector<double>& a,
                                              const std::vector<double>& b, double t_end,
                                              const VerifyOptions& opts = {}) {
    sys.check_in_box(a);
    sys.check_in_box(b);
    bool equal = true;
    for (int i = 0; i < sys.dim(); ++i) {
        if (a[i] > b[i])
            throw InputError("verify_monotonicity needs a ≤ b componentwise; coordinate " +
                             std::to_string(i + 1) + " violates it");
        equal = equal && a[i] == b[i];
    }
    SimOptions sim = opts.sim;
    sim.sample_dt = t_end / std::max(1, opts.samples - 1);
    const Trajectory ta = simulate(sys, a, t_end, sim);
    const Trajectory tb = simulate(sys, b, t_end, sim);

    MonotonicityReport rep;
    rep.strict_checked = !equal;
    const double strict_end = opts.strict_window_end > 0.0 ? opts.strict_window_end : t_end;
    const std::size_t K = std::min(ta.t.size(), tb.t.size());
    for (std::size_t k = 0; k < K; ++k) {
        const double t = ta.t[k];
        for (int i = 0; i < sys.dim(); ++i) {
            const double diff = ta.x[k][i] - tb.x[k][i];   // positive = violation
            if (diff > rep.max_weak_violation) {
                rep.max_weak_violation = diff;
                if (diff > tol::order && rep.first_violation_t < 0.0) {
                    rep.first_violation_t = t;
                    rep.first_violation_coord = i + 1;
                }
            }
        }
        if (rep.strict_checked && t >= tol::t_strict && t <= strict_end) {
            double gap = std::numeric_limits<double>::infinity();
            for (int i = 0; i < sys.dim(); ++i)
                gap = std::min(gap, tb.x[k][i] - ta.x[k][i]);
            if (gap < rep.min_strict_gap)
                rep.min_strict_gap = gap;
            if (gap < tol::strict_margin && rep.first_violation_t < 0.0) {
                rep.first_violation_t = t;
                rep.first_violation_coord = 0;
            }
        }
    }
    rep.pass = rep.max_weak_violation <= tol::order &&
               (!rep.strict_checked || rep.min_strict_gap >= tol::strict_margin);
    return rep;
}

struct ContractionReport {
    bool pass = true;
    double initial_distance = 0.0;
    /// max over samples of ‖ϱ(t,a) − ϱ(t,b)‖₁ − ‖a − b‖₁.
    double max_excess_over_initial = 0.0;
    /// max consecutive-sample increase of the ℓ¹ distance.
    double max_step_increase = 0.0;
    /// max |μ₁(J)| over states sampled along the first trajectory.
    double max_abs_mu1 = 0.0;
    double first_violation_t = -1.0;
};

/// ℓ¹ non-expansion: the distance between two solutions never exceeds the
/// initial distance and is nonincreasing along the sample grid (within
/// tol::l1); the ℓ¹ matrix measure of the Jacobian vanishes along the way
/// (within tol::mu1).
inline ContractionReport verify_contraction(const ReducedSystem& sys, const std::vector<double>& a,
                                            const std::vector<double>& b, double t_end,
                                            const VerifyOptions& opts = {}) {
    sys.check_in_box(a);
    sys.check_in_box(b);
    SimOptions sim = opts.sim;
    sim.sample_dt = t_end / std::max(1, opts.samples - 1);
    const Trajectory ta = simulate(sys, a, t_end, sim);
    const Trajectory tb = simulate(sys, b, t_end, sim);

    ContractionReport rep;
    const std::size_t K = std::min(ta.t.size(), tb.t.size());
    double prev = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        double d = 0.0;
        for (int i = 0; i < sys.dim(); ++i)
            d += std::fabs(ta.x[k][i] - tb.x[k][i]);
        if (k == 0) {
            rep.initial_distance = d;
        } else {
            rep.max_excess_over_initial =
                std::max(rep.max_excess_over_initial, d - rep.initial_distance);
            rep.max_step_increase = std::max(rep.max_step_increase, d - prev);
            if ((d - rep.initial_distance > tol::l1 || d - prev > tol::l1) &&
                rep.first_violation_t < 0.0)
                rep.first_violation_t = ta.t[k];
        }
        prev = d;
        rep.max_abs_mu1 =
            std::max(rep.max_abs_mu1, std::fabs(matrix_measure_l1(sys.jacobian(ta.x[k]))));
    }
    rep.pass = rep.max_excess_over_initial <= tol::l1 && rep.max_step_increase <= tol::l1 &&
               rep.max_abs_mu1 <= tol::mu1;
    return rep;
}

// ---- structure checks ------------------------------------------------------

struct JacobianStructureReport {
    bool pass = true;
    int samples = 0;
    double max_fd_rel_error = 0.0;   // vs central differences, step 1e-6
    double max_col_sum = 0.0;        // |Σ_i J_ik|
    double max_sign_violation = 0.0; // off-diagonal below 0 / diagonal above 0
    double max_abs_mu1 = 0.0;
};

inline JacobianStructureReport check_jacobian_structure(const ReducedSystem& sys, int samples,
                                                        std::mt19937_64& rng) {
    JacobianStructureReport rep;
    rep.samples = samples;
    const int m = sys.dim();
    const auto& cap = sys.capacities();
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    const double h = 1e-6;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> n(m);
        for (int i = 0; i < m; ++i)
            n[i] = cap[i] * unit(rng);
        const auto J = sys.jacobian(n);
        // central finite differences of the rhs
        for (int j = 0; j < m; ++j) {
            std::vector<double> np = n, nm = n;
            np[j] += h;
            nm[j] -= h;
            const auto fp = sys.rhs_clamped(np);
            const auto fm = sys.rhs_clamped(nm);
            for (int i = 0; i < m; ++i) {
                const double fd = (fp[i] - fm[i]) / (2.0 * h);
                const double rel = std::fabs(J[i][j] - fd) / (1.0 + std::fabs(J[i][j]));
                rep.max_fd_rel_error = std::max(rep.max_fd_rel_error, rel);
            }
        }
        for (int k = 0; k < m; ++k) {
            double col = 0.0;
            for (int i = 0; i < m; ++i) {
                col += J[i][k];
                const double viol = i == k ? J[i][k] : -J[i][k];
                rep.max_sign_violation = std::max(rep.max_sign_violation, viol);
            }
            rep.max_col_sum = std::max(rep.max_col_sum, std::fabs(col));
        }
        rep.max_abs_mu1 = std::max(rep.max_abs_mu1, std::fabs(matrix_measure_l1(J)));
    }
    rep.pass = rep.max_fd_rel_error <= 1e-5 && rep.max_col_sum <= 1e-10 &&
               rep.max_sign_violation <= 1e-12 && rep.max_abs_mu1 <= tol::mu1;
    return rep;
}

struct BoundaryScanReport {
    bool pass = true;
    int grid_per_axis = 0;
    std::int64_t boundary_samples = 0;
    /// min ‖rhs‖∞ over boundary samples other than 0 and c.
    double min_noncorner_rhs = std::numeric_limits<double>::infinity();
    /// max ‖rhs‖∞ at the two trivial equilibria (should be ~0).
    double max_corner_rhs = 0.0;
    std::vector<std::vector<double>> violations;  // capped at 10 entries
};

/// Scans the boundary faces of C on a uniform grid and checks that the rhs
/// vanishes only at the trivial equilibria 0 and c. The grid is thinned for
/// high-dimensional systems to keep the point count bounded.
inline BoundaryScanReport boundary_equilibria_scan(const ReducedSystem& sys,
                                                   int grid_per_axis = 11) {
    if (!is_strongly_connected(sys.graph()))
        throw NotStronglyConnectedError(
            "the boundary-equilibria claim holds for strongly connected graphs; refusing to "
            "scan a non-strongly-connected system");
    const int m = sys.dim();
    const auto& cap = sys.capacities();
    int g = std::max(3, grid_per_axis);
    while (g > 3 && std::pow(static_cast<double>(g), m) > 5e6)
        --g;

    double max_cap = 0.0;
    for (double c : cap)
        max_cap = std::max(max_cap, c);
    const double zero_tol = 1e-9 * (1.0 + max_cap);

    BoundaryScanReport rep;
    rep.grid_per_axis = g;
    std::vector<int> digit(m, 0);
    std::vector<double> n(m);
    for (;;) {
        bool boundary = false, all_zero = true, all_full = true;
        for (int i = 0; i < m; ++i) {
            boundary = boundary || digit[i] == 0 || digit[i] == g - 1;
            all_zero = all_zero && digit[i] == 0;
            all_full = all_full && digit[i] == g - 1;
        }
        if (boundary) {
            for (int i = 0; i < m; ++i)
                n[i] = cap[i] * digit[i] / (g - 1);
            double r = 0.0;
            for (double v : sys.rhs(n))
                r = std::max(r, std::fabs(v));
            if (all_zero || all_full) {
                rep.max_corner_rhs = std::max(rep.max_corner_rhs, r);
            } else {
                ++rep.boundary_samples;
                rep.min_noncorner_rhs = std::min(rep.min_noncorner_rhs, r);
                if (r <= zero_tol && rep.violations.size() < 10)
                    rep.violations.push_back(n);
            }
        }
        int i = 0;
        while (i < m && ++digit[i] == g) {
            digit[i] = 0;
            ++i;
        }
        if (i == m)
            break;
    }
    rep.pass = rep.violations.empty() && rep.min_noncorner_rhs > zero_tol &&
               rep.max_corner_rhs <= zero_tol;
    return rep;
}

// ---- persistence evidence ---------------------------------------------------

struct PersistenceEvidenceReport {
    bool pass = true;
    int trials = 0;
    /// empirical floor: min over trials of the tail-window minimum of
    /// min_i min(n_i, c_i − n_i). Reported, not asserted against a fixed
    /// constant — it only must stay positive.
    double min_tail_floor = std::numeric_limits<double>::infinity();
    /// near-boundary starts: the perturbed coordinate's distance to its face
    /// must grow strictly across every sampled step that begins inside the
    /// repulsion band (5% of the smallest capacity). Only steps starting
    /// inside the band are constrained: once clear of the boundary the
    /// coordinate may relax non-monotonically toward equilibrium.
    bool near_boundary_increasing = true;
    /// smaller of the two runs' final boundary-distance floors; must end
    /// above the 1e-6 the runs started from.
    double near_boundary_final_floor = std::numeric_limits<double>::infinity();
};

inline double boundary_distance_floor(const std::vector<double>& n,
                                      const std::vector<double>& cap) {
    double f = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n.size(); ++i)
        f = std::min(f, std::min(n[i], cap[i] - n[i]));
    return f;
}

inline PersistenceEvidenceReport verify_persistence_numerically(const ReducedSystem& sys,
                                                                int trials, double t_end,
                                                                std::mt19937_64& rng,
                                                                const SimOptions& sim_opts = {}) {
    if (!is_strongly_connected(sys.graph()))
        throw NotStronglyConnectedError(
            "persistence evidence assumes a certified (strongly connected) system");
    const int m = sys.dim();
    const auto& cap = sys.capacities();
    PersistenceEvidenceReport rep;
    rep.trials = trials;
    std::uniform_real_distribution<double> unit(0.05, 0.95);

    SimOptions sim = sim_opts;
    sim.sample_dt = t_end / 100.0;
    for (int tr = 0; tr < trials; ++tr) {
        std::vector<double> n0(m);
        for (int i = 0; i < m; ++i)
            n0[i] = cap[i] * unit(rng);
        const Trajectory traj = simulate(sys, n0, t_end, sim);
        for (std::size_t k = 0; k < traj.t.size(); ++k) {
            if (traj.t[k] < 0.8 * t_end)
                continue;
            rep.min_tail_floor =
                std::min(rep.min_tail_floor, boundary_distance_floor(traj.x[k], cap));
        }
    }

    // Boundary-repulsion evidence: one start squeezed against the empty side,
    // one against the full side (the complementary picture), others at
    // mid-capacity. While the perturbed coordinate sits within the repulsion
    // band its inflow (outflow, on the full side) dominates, so its distance
    // to the face can never return to a value it held inside the band; the
    // sampled distances must therefore be strictly increasing from any
    // in-band sample. The global distance floor must also end above the
    // 1e-6 offset the runs started from.
    std::uniform_int_distribution<int> pick(0, m - 1);
    double band = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
        band = std::min(band, 0.05 * cap[i]);
    for (int side = 0; side < 2; ++side) {
        const int kappa = pick(rng);
        std::vector<double> n0(m);
        for (int i = 0; i < m; ++i)
            n0[i] = 0.5 * cap[i];
        n0[kappa] = side == 0 ? 1e-6 : cap[kappa] - 1e-6;
        SimOptions s2 = sim_opts;
        s2.sample_dt = 0.1;
        const Trajectory traj = simulate(sys, n0, 1.0, s2);
        for (std::size_t k = 0; k + 1 < traj.t.size(); ++k) {
            const double dk = side == 0 ? traj.x[k][kappa] : cap[kappa] - traj.x[k][kappa];
            const double dn =
                side == 0 ? traj.x[k + 1][kappa] : cap[kappa] - traj.x[k + 1][kappa];
            if (dk < band && dn <= dk)
                rep.near_boundary_increasing = false;
        }
        const double final_floor = boundary_distance_floor(traj.x.back(), cap);
        rep.near_boundary_final_floor = std::min(rep.near_boundary_final_floor, final_floor);
        if (final_floor <= 1e-6)
            rep.near_boundary_increasing = false;
    }
    rep.pass = rep.min_tail_floor > 0.0 && rep.near_boundary_increasing;
    return rep;
}

// ---- equilibrium uniqueness -------------------------------------------------

struct EquilibriumReport {
    bool pass = true;
    int levels = 0;
    int starts_per_level = 0;
    /// max ℓ∞ distance between a settled start and the reference equilibrium
    /// of its level.
    double max_spread = 0.0;
    double max_residual = 0.0;
    double max_level_error = 0.0;
};

/// Draws a state in the compatibility class L_s by proportional scaling
/// with capacity clamping. force_coord ≥ 0 pins that coordinate to 0
/// (side 0) or its capacity (side 1) first, when feasible.
inline std::vector<double> random_level_state(const ReducedSystem& sys, double s,
                                              std::mt19937_64& rng, int force_coord = -1,
                                              int side = 0) {
    const int m = sys.dim();
    const auto& cap = sys.capacities();
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    std::vector<double> x(m, 0.0);
    std::vector<char> fixed(m, 0);
    double remaining = s;
    if (force_coord >= 0) {
        const double v = side == 0 ? 0.0 : cap[force_coord];
        double others = 0.0;
        for (int i = 0; i < m; ++i)
            if (i != force_coord)
                others += cap[i];
        if (s - v >= 0.0 && s - v <= others) {
            x[force_coord] = v;
            fixed[force_coord] = 1;
            remaining = s - v;
        }
    }
    std::vector<double> w(m, 0.0);
    for (int i = 0; i < m; ++i)
        if (!fixed[i])
            w[i] = unit(rng);
    for (int round = 0; round < m + 1; ++round) {
        double wsum = 0.0;
        for (int i = 0; i < m; ++i)
            if (!fixed[i])
                wsum += w[i];
        if (wsum <= 0.0)
            break;
        bool clamped = false;
        const double scale = remaining / wsum;
        for (int i = 0; i < m; ++i) {
            if (fixed[i])
                continue;
            const double v = w[i] * scale;
            if (v > cap[i]) {
                x[i] = cap[i];
                fixed[i] = 1;
                remaining -= cap[i];
                clamped = true;
            } else {
                x[i] = v;
            }
        }
        if (!clamped)
            break;
    }
    return x;
}

inline EquilibriumReport check_equilibrium_uniqueness(const ReducedSystem& sys, int levels,
                                                      int starts, std::mt19937_64& rng,
                                                      const EqOptions& eq = {}) {
    EquilibriumReport rep;
    rep.levels = levels;
    rep.starts_per_level = starts;
    const double total = sys.total_capacity();
    double max_cap = 0.0;
    for (double c : sys.capacities())
        max_cap = std::max(max_cap, c);
    const double tol_eq = eq.tol_eq > 0.0 ? eq.tol_eq : tol::eq_scale * (1.0 + max_cap);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    std::uniform_int_distribution<int> pick(0, sys.dim() - 1);
    for (int lv = 0; lv < levels; ++lv) {
        const double s = total * unit(rng);
        const EquilibriumResult ref = find_equilibrium(sys, s, eq);
        rep.max_residual = std::max(rep.max_residual, ref.residual_inf);
        rep.max_level_error = std::max(rep.max_level_error, std::fabs(level_of(ref.e) - s));
        for (int st = 0; st < starts; ++st) {
            // the first two starts sit on the boundary of C (but not at a corner)
            std::vector<double> n0 = st < 2 ? random_level_state(sys, s, rng, pick(rng), st)
                                            : random_level_state(sys, s, rng);
            const EquilibriumResult r = settle_to_equilibrium(sys, n0, eq);
            double d = 0.0;
            for (int i = 0; i < sys.dim(); ++i)
                d = std::max(d, std::fabs(r.e[i] - ref.e[i]));
            rep.max_spread = std::max(rep.max_spread, d);
            rep.max_residual = std::max(rep.max_residual, r.residual_inf);
            rep.max_level_error =
                std::max(rep.max_level_error, std::fabs(level_of(r.e) - level_of(n0)));
        }
    }
    rep.pass = rep.max_spread <= 1e-7 && rep.max_residual <= tol_eq &&
               rep.max_level_error <= 1e-9 * (1.0 + total);
    return rep;
}

// ---- campaigns and the suite --------------------------------------------------

struct PairCampaignReport {
    bool pass = true;
    int pairs = 0;
    int violations = 0;
    double max_weak_violation = 0.0;                                  // monotonicity
    double min_strict_gap = std::numeric_limits<double>::infinity();  // monotonicity
    double max_step_increase = 0.0;                                   // contraction
    double max_excess_over_initial = 0.0;                             // contraction
    double max_abs_mu1 = 0.0;                                         // contraction
};

struct VerificationSummary {
    bool strongly_connected = true;
    bool persistent_certified = true;
    EquilibriumReport equilibrium;
    JacobianStructureReport jacobian;
    PairCampaignReport monotonicity;
    PairCampaignReport contraction;
    BoundaryScanReport boundary;
    PersistenceEvidenceReport persistence;
    bool overall_pass = false;
};

namespace detail {

inline std::vector<double> random_interior(const ReducedSystem& sys, std::mt19937_64& rng,
                                           double lo = 0.02, double hi = 0.98) {
    std::uniform_real_distribution<double> unit(lo, hi);
    std::vector<double> x(sys.dim());
    for (int i = 0; i < sys.dim(); ++i)
        x[i] = sys.capacities()[i] * unit(rng);
    return x;
}

} // namespace detail

/// Runs the full verification suite on a strongly connected system:
/// equilibrium uniqueness, Jacobian structure, monotonicity and contraction
/// campaigns, the boundary scan, and persistence evidence. Deterministic
/// for a fixed seed.
inline VerificationSummary run_verification_suite(const ReducedSystem& sys,
                                                  const VerifyOptions& opts = {}) {
    if (!is_strongly_connected(sys.graph()))
        throw NotStronglyConnectedError(
            "the verification suite checks claims stated for strongly connected "
            "compartmental graphs; this graph is not strongly connected");
    VerificationSummary sum;
    std::mt19937_64 rng(opts.seed);

    sum.equilibrium = check_equilibrium_uniqueness(sys, opts.equilibrium_levels,
                                                   opts.equilibrium_starts, rng, opts.eq);
    sum.jacobian = check_jacobian_structure(sys, opts.jacobian_samples, rng);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    sum.monotonicity.pairs = opts.ordered_pairs;
    for (int p = 0; p < opts.ordered_pairs; ++p) {
        const auto a = detail::random_interior(sys, rng);
        std::vector<double> b(sys.dim());
        for (int i = 0; i < sys.dim(); ++i) {
            const double headroom = sys.capacities()[i] * (1.0 - 1e-6) - a[i];
            b[i] = a[i] + std::max(0.0, headroom) * 0.5 * unit(rng);
        }
        const auto rep = verify_monotonicity(sys, a, b, opts.t_end, opts);
        sum.monotonicity.max_weak_violation =
            std::max(sum.monotonicity.max_weak_violation, rep.max_weak_violation);
        if (rep.strict_checked)
            sum.monotonicity.min_strict_gap =
                std::min(sum.monotonicity.min_strict_gap, rep.min_strict_gap);
        if (!rep.pass)
            ++sum.monotonicity.violations;
    }
    sum.monotonicity.pass = sum.monotonicity.violations == 0;

    sum.contraction.pairs = opts.unordered_pairs;
    for (int p = 0; p < opts.unordered_pairs; ++p) {
        const auto a = detail::random_interior(sys, rng);
        const auto b = detail::random_interior(sys, rng);
        const auto rep = verify_contraction(sys, a, b, opts.t_end, opts);
        sum.contraction.max_step_increase =
            std::max(sum.contraction.max_step_increase, rep.max_step_increase);
        sum.contraction.max_excess_over_initial =
            std::max(sum.contraction.max_excess_over_initial, rep.max_excess_over_initial);
        sum.contraction.max_abs_mu1 = std::max(sum.contraction.max_abs_mu1, rep.max_abs_mu1);
        if (!rep.pass)
            ++sum.contraction.violations;
    }
    sum.contraction.pass = sum.contraction.violations == 0;

    sum.boundary = boundary_equilibria_scan(sys, opts.boundary_grid);
    sum.persistence =
        verify_persistence_numerically(sys, opts.persistence_trials, opts.t_end, rng, opts.sim);

    sum.overall_pass = sum.equilibrium.pass && sum.jacobian.pass && sum.monotonicity.pass &&
                       sum.contraction.pass && sum.boundary.pass && sum.persistence.pass;
    return sum;
}

} // namespace capkin

#endif
