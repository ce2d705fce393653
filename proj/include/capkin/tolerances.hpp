#ifndef CAPKIN_TOLERANCES_HPP
#define CAPKIN_TOLERANCES_HPP

namespace capkin {
namespace tol {

/// Absolute slack for negative-state rejection and box-membership checks:
/// absorbs integrator roundoff without masking genuine violations.
inline constexpr double state = 1e-9;

/// Equilibrium residual criterion is eq_scale * (1 + max_i c_i) on the
/// sup-norm of the right-hand side (scale-aware absolute criterion).
inline constexpr double eq_scale = 1e-10;

/// Default adaptive-integrator tolerances.
inline constexpr double ode_abs = 1e-10;
inline constexpr double ode_rel = 1e-8;

/// Strict-order assertions start at t_strict and use strict_margin: order
/// is strict for all t > 0 in exact arithmetic, but finite precision needs
/// a separation window.
inline constexpr double t_strict = 0.1;
inline constexpr double strict_margin = 1e-12;

/// Comparison slacks for the trajectory-pair verifiers and the matrix
/// measure bound |mu_1(J)| <= mu1.
inline constexpr double order = 1e-9;
inline constexpr double l1 = 1e-9;
inline constexpr double mu1 = 1e-9;

/// Siphon enumeration refuses nets beyond this many places unless the
/// caller raises the cap explicitly.
inline constexpr int place_cap = 24;

} // namespace tol
} // namespace capkin

#endif
