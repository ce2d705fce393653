// Independent reference implementations used to cross-check the library:
// reachability by boolean closure (vs Tarjan), siphons by exhaustive subset
// enumeration (vs directed growth), conserved-quantity existence by exact
// basic-solution enumeration (vs the simplex), plus seeded random graph
// generators shared by the property tests.
#ifndef CAPKIN_TESTS_ORACLES_HPP
#define CAPKIN_TESTS_ORACLES_HPP

#include <capkin/capkin.hpp>

#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

// ---- reachability -----------------------------------------------------------

/// Transitive closure by Floyd-Warshall over booleans.
inline std::vector<std::vector<char>> closure(int n, const std::vector<std::pair<int, int>>& arcs) {
    std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        r[i][i] = 1;
    for (const auto& [u, v] : arcs)
        r[u][v] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (r[i][k])
                for (int j = 0; j < n; ++j)
                    if (r[k][j])
                        r[i][j] = 1;
    return r;
}

inline bool digraph_strongly_connected(int n, const std::vector<std::pair<int, int>>& arcs) {
    const auto r = closure(n, arcs);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!r[i][j])
                return false;
    return true;
}

inline bool graph_sc(const capkin::CompartmentalGraph& g) {
    std::vector<std::pair<int, int>> arcs;
    for (const auto& e : g.edges())
        arcs.emplace_back(e.from, e.to);
    return digraph_strongly_connected(g.size(), arcs);
}

inline bool petri_sc(const capkin::PetriNet& net) {
    const int M = net.place_count();
    const int n = M + net.transition_count();
    std::vector<std::pair<int, int>> arcs;
    for (int t = 0; t < net.transition_count(); ++t) {
        for (const auto& [p, w] : net.transitions[t].in)
            arcs.emplace_back(p, M + t);
        for (const auto& [p, w] : net.transitions[t].out)
            arcs.emplace_back(M + t, p);
    }
    return digraph_strongly_connected(n, arcs);
}

// ---- siphons by definition ----------------------------------------------------

inline bool siphon_by_definition(const capkin::PetriNet& net, std::uint32_t mask) {
    // every transition with an output place in the set must also have an
    // input place in the set
    for (const auto& tr : net.transitions) {
        bool outputs_into = false;
        for (const auto& [p, w] : tr.out)
            outputs_into = outputs_into || ((mask >> p) & 1u);
        if (!outputs_into)
            continue;
        bool inputs_from = false;
        for (const auto& [p, w] : tr.in)
            inputs_from = inputs_from || ((mask >> p) & 1u);
        if (!inputs_from)
            return false;
    }
    return true;
}

inline std::vector<std::vector<int>> minimal_siphons_exhaustive(const capkin::PetriNet& net) {
    const int M = net.place_count();
    std::vector<std::uint32_t> siphons;
    for (std::uint32_t mask = 1; mask < (1u << M); ++mask)
        if (siphon_by_definition(net, mask))
            siphons.push_back(mask);
    std::vector<std::vector<int>> minimal;
    for (std::uint32_t s : siphons) {
        bool is_min = true;
        for (std::uint32_t q : siphons)
            is_min = is_min && !(q != s && (q & s) == q);
        if (!is_min)
            continue;
        std::vector<int> idx;
        for (int p = 0; p < M; ++p)
            if ((s >> p) & 1u)
                idx.push_back(p);
        minimal.push_back(idx);
    }
    std::sort(minimal.begin(), minimal.end());
    return minimal;
}

// ---- exact linear algebra (local implementation) -------------------------------

using capkin::Rational;
using RatMat = std::vector<std::vector<Rational>>;
using RatVec = std::vector<Rational>;

struct SolveOutcome {
    bool consistent = false;
    bool unique = false;
    RatVec x;
};

/// Gauss-Jordan solve of A x = b over the rationals (A may be any shape).
inline SolveOutcome solve_exact(RatMat a, RatVec b) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        const Rational d = a[r][c];
        for (int j = 0; j < cols; ++j)
            a[r][j] /= d;
        b[r] /= d;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            const Rational f = a[i][c];
            for (int j = 0; j < cols; ++j)
                a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    SolveOutcome out;
    for (int i = r; i < rows; ++i)
        if (b[i] != 0)
            return out;  // inconsistent
    out.consistent = true;
    out.unique = static_cast<int>(pivot_col.size()) == cols;
    out.x.assign(cols, Rational(0));
    for (int k = 0; k < static_cast<int>(pivot_col.size()); ++k)
        out.x[pivot_col[k]] = b[k];
    return out;
}

/// Feasibility of {x >= 0 : A x = b}, decided by enumerating candidate
/// supports. Complete: the polyhedron lies in the nonnegative orthant, hence
/// is pointed, so if nonempty it contains a vertex; a vertex's support
/// indexes linearly independent columns and solves A_S x_S = b uniquely.
inline bool feasible_nonneg(const RatMat& a, const RatVec& b) {
    bool b_zero = true;
    for (const auto& v : b)
        b_zero = b_zero && v == 0;
    if (b_zero)
        return true;
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    const int max_support = std::min(rows, cols);
    for (std::uint32_t mask = 1; mask < (1u << cols); ++mask) {
        if (__builtin_popcount(mask) > max_support)
            continue;
        std::vector<int> s;
        for (int j = 0; j < cols; ++j)
            if ((mask >> j) & 1u)
                s.push_back(j);
        RatMat as(rows, RatVec(s.size()));
        for (int i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < s.size(); ++k)
                as[i][k] = a[i][s[k]];
        const SolveOutcome sol = solve_exact(as, b);
        if (!sol.consistent || !sol.unique)
            continue;
        bool nonneg = true;
        for (const auto& v : sol.x)
            nonneg = nonneg && v >= 0;
        if (nonneg)
            return true;
    }
    return false;
}

/// Existence of a nonnegative, nonzero conserved quantity supported inside
/// `allowed` (normalized to coefficient sum one).
inline bool exists_nonneg_conserved_on_support(const capkin::Crn& crn,
                                               const std::vector<int>& allowed) {
    const auto gamma = capkin::stoichiometric_matrix(crn);
    const int R = crn.reaction_count();
    const int T = static_cast<int>(allowed.size());
    RatMat a(R + 1, RatVec(T, Rational(0)));
    RatVec b(R + 1, Rational(0));
    for (int r = 0; r < R; ++r)
        for (int t = 0; t < T; ++t)
            a[r][t] = Rational(gamma[allowed[t]][r]);
    for (int t = 0; t < T; ++t)
        a[R][t] = 1;
    b[R] = 1;
    return feasible_nonneg(a, b);
}

/// Existence of a strictly positive conserved quantity. Scaling lets us ask
/// for c >= 1; with d = c - 1 >= 0 this is feasibility of G^T d = -G^T 1.
inline bool exists_strictly_positive_conserved(const capkin::Crn& crn) {
    const auto gamma = capkin::stoichiometric_matrix(crn);
    const int R = crn.reaction_count();
    const int M = crn.species_count();
    RatMat a(R, RatVec(M, Rational(0)));
    RatVec b(R, Rational(0));
    for (int r = 0; r < R; ++r)
        for (int j = 0; j < M; ++j) {
            a[r][j] = Rational(gamma[j][r]);
            b[r] -= Rational(gamma[j][r]);
        }
    return feasible_nonneg(a, b);
}

/// Exact residual c'*Gamma of a candidate conserved quantity (all zero iff conserved).
inline RatVec certificate_residual(const capkin::Crn& crn, const RatVec& c) {
    const auto gamma = capkin::stoichiometric_matrix(crn);
    RatVec res(crn.reaction_count(), Rational(0));
    for (int r = 0; r < crn.reaction_count(); ++r)
        for (int j = 0; j < crn.species_count(); ++j)
            res[r] += c[j] * Rational(gamma[j][r]);
    return res;
}

// ---- random generators ----------------------------------------------------------

inline capkin::RateSpec random_rate(std::mt19937_64& rng, bool allow_saturating) {
    std::uniform_real_distribution<double> par(0.5, 2.0);
    capkin::RateSpec spec;
    if (allow_saturating && (rng() & 1u)) {
        spec.kind = capkin::RateKind::saturating;
        spec.k = par(rng);
        spec.a = par(rng);
        spec.b = par(rng);
    } else {
        spec.kind = capkin::RateKind::mass_action;
        spec.k = par(rng);
    }
    return spec;
}

/// Random strongly connected graph: a random Hamiltonian cycle plus extra
/// arcs, random capacities in [0.5, 2], mixed rate kinds.
inline capkin::GraphSpec random_sc_spec(std::mt19937_64& rng, int m,
                                        bool allow_saturating = true) {
    std::uniform_real_distribution<double> cap(0.5, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    capkin::GraphSpec spec;
    for (int i = 0; i < m; ++i)
        spec.capacities.push_back(cap(rng));
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i)
        perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::set<std::pair<int, int>> used;
    auto add = [&](int u, int v) {
        if (u == v || used.count({u, v}))
            return;
        used.insert({u, v});
        spec.edges.push_back({u + 1, v + 1, random_rate(rng, allow_saturating)});
    };
    if (m == 1)
        return spec;
    for (int i = 0; i < m; ++i)
        add(perm[i], perm[(i + 1) % m]);
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v)
            if (u != v && unit(rng) < 0.3)
                add(u, v);
    return spec;
}

/// Random digraph without the strong-connectivity guarantee.
inline capkin::GraphSpec random_spec(std::mt19937_64& rng, int m, double edge_prob = 0.35) {
    std::uniform_real_distribution<double> cap(0.5, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    capkin::GraphSpec spec;
    for (int i = 0; i < m; ++i)
        spec.capacities.push_back(cap(rng));
    bool any = false;
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v)
            if (u != v && unit(rng) < edge_prob) {
                spec.edges.push_back({u + 1, v + 1, random_rate(rng, true)});
                any = true;
            }
    if (!any && m >= 2)
        spec.edges.push_back({1, 2, random_rate(rng, true)});
    return spec;
}

} // namespace oracle

#endif
