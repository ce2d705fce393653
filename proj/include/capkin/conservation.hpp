#ifndef CAPKIN_CONSERVATION_HPP
#define CAPKIN_CONSERVATION_HPP

#include "capkin/crn.hpp"
#include "capkin/errors.hpp"
#include "capkin/exact_lp.hpp"
#include "capkin/rational.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace capkin {

/// A nonnegative, nonzero rational vector c with cᵀΓ = 0 exactly.
struct ConservedQuantity {
    RatVec c;                  // one entry per species
    std::vector<int> support;  // indices with c_i > 0, ascending
};

/// Exact check that cᵀΓ = 0 for every reaction.
inline bool is_conserved(const Crn& crn, const RatVec& c) {
    if (static_cast<int>(c.size()) != crn.species_count())
        return false;
    for (const auto& r : crn.reactions()) {
        Rational dot = 0;
        for (int j = 0; j < crn.species_count(); ++j) {
            const int d = r.yp[j] - r.y[j];
            if (d != 0)
                dot += c[j] * d;
        }
        if (dot != 0)
            return false;
    }
    return true;
}

/// Basis of the rational left null space of Γ (all c with cᵀΓ = 0), via
/// reduced row echelon form of Γᵀ. Dimension is M − rank(Γ). Vectors are
/// scaled to coprime integers with positive leading entry, ordered by their
/// free-column index.
inline std::vector<RatVec> conservation_basis(const Crn& crn) {
    const int M = crn.species_count(), R = crn.reaction_count();
    std::vector<RatVec> basis;
    if (R == 0) {
        for (int j = 0; j < M; ++j) {
            RatVec v(M, Rational(0));
            v[j] = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }
    const auto gamma = stoichiometric_matrix(crn);
    RatMat at(R, RatVec(M, Rational(0)));   // Γᵀ
    for (int r = 0; r < R; ++r)
        for (int j = 0; j < M; ++j)
            at[r][j] = gamma[j][r];
    const std::vector<int> pivots = detail::rref(at);
    std::vector<char> is_pivot(M, 0);
    for (int p : pivots)
        is_pivot[p] = 1;
    for (int f = 0; f < M; ++f) {
        if (is_pivot[f])
            continue;
        RatVec v(M, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -at[r][f];
        basis.push_back(detail::normalize_integer(v));
    }
    return basis;
}

/// Searches for a nonnegative, nonzero conserved quantity supported inside
/// `allowed` (the per-siphon certificate, "condition (2)"). Decision by exact
/// rational LP: maximize Σ c_i subject to cᵀΓ = 0, 0 ≤ c_i ≤ 1 on allowed
/// indices and c_i = 0 elsewhere; such a quantity exists iff the optimum is
/// positive. No floating-point verdicts.
inline std::optional<ConservedQuantity> positive_conserved_on_support(const Crn& crn,
                                                                      std::vector<int> allowed) {
    if (allowed.empty())
        throw InputError("the allowed species set must be nonempty");
    std::sort(allowed.begin(), allowed.end());
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
    const int M = crn.species_count(), R = crn.reaction_count();
    for (int j : allowed)
        if (j < 0 || j >= M)
            throw InputError("allowed species index " + std::to_string(j) + " out of range");
    const int T = static_cast<int>(allowed.size());

    // Variables: c_t (t over allowed), then box slacks u_t with c_t + u_t = 1.
    const auto gamma = stoichiometric_matrix(crn);
    RatMat a;
    RatVec b;
    for (int r = 0; r < R; ++r) {
        RatVec row(2 * T, Rational(0));
        bool nonzero = false;
        for (int t = 0; t < T; ++t) {
            row[t] = gamma[allowed[t]][r];
            nonzero = nonzero || row[t] != 0;
        }
        if (nonzero) {
            a.push_back(std::move(row));
            b.push_back(0);
        }
    }
    for (int t = 0; t < T; ++t) {
        RatVec row(2 * T, Rational(0));
        row[t] = 1;
        row[T + t] = 1;
        a.push_back(std::move(row));
        b.push_back(1);
    }
    RatVec obj(2 * T, Rational(0));
    for (int t = 0; t < T; ++t)
        obj[t] = 1;

    const auto sol = detail::simplex_max(std::move(a), std::move(b), std::move(obj));
    if (!sol || sol->objective <= 0)
        return std::nullopt;
    RatVec c(M, Rational(0));
    for (int t = 0; t < T; ++t)
        c[allowed[t]] = sol->x[t];
    ConservedQuantity q;
    q.c = detail::normalize_integer(c);
    for (int j = 0; j < M; ++j)
        if (q.c[j] > 0)
            q.support.push_back(j);
    return q;
}

/// Searches for a strictly positive conserved quantity (the global
/// certificate, "condition (1)"). Exact rational LP: maximize t subject to cᵀΓ = 0,
/// c_i ≥ t for all i, c_i ≤ 1; a strictly positive conserved quantity
/// exists iff the optimum t is positive (any such c can be rescaled to
/// max-entry 1).
inline std::optional<ConservedQuantity> strictly_positive_conserved(const Crn& crn) {
    const int M = crn.species_count(), R = crn.reaction_count();
    // Variables: c (M), t (1), u (M) with c_i - t - u_i = 0, s (M) with c_i + s_i = 1.
    const int n_vars = 3 * M + 1;
    const int vt = M, vu = M + 1, vs = 2 * M + 1;
    const auto gamma = stoichiometric_matrix(crn);
    RatMat a;
    RatVec b;
    for (int r = 0; r < R; ++r) {
        RatVec row(n_vars, Rational(0));
        bool nonzero = false;
        for (int j = 0; j < M; ++j) {
            row[j] = gamma[j][r];
            nonzero = nonzero || row[j] != 0;
        }
        if (nonzero) {
            a.push_back(std::move(row));
            b.push_back(0);
        }
    }
    for (int j = 0; j < M; ++j) {
        RatVec row(n_vars, Rational(0));
        row[j] = 1;
        row[vt] = -1;
        row[vu + j] = -1;
        a.push_back(std::move(row));
        b.push_back(0);
    }
    for (int j = 0; j < M; ++j) {
        RatVec row(n_vars, Rational(0));
        row[j] = 1;
        row[vs + j] = 1;
        a.push_back(std::move(row));
        b.push_back(1);
    }
    RatVec obj(n_vars, Rational(0));
    obj[vt] = 1;

    const auto sol = detail::simplex_max(std::move(a), std::move(b), std::move(obj));
    if (!sol || sol->objective <= 0)
        return std::nullopt;
    RatVec c(sol->x.begin(), sol->x.begin() + M);
    ConservedQuantity q;
    q.c = detail::normalize_integer(c);
    q.support.resize(M);
    for (int j = 0; j < M; ++j)
        q.support[j] = j;
    return q;
}

} // namespace capkin

#endif
