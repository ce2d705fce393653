#ifndef CAPKIN_REDUCED_HPP
#define CAPKIN_REDUCED_HPP

#include "capkin/errors.hpp"
#include "capkin/graph.hpp"
#include "capkin/rate.hpp"
#include "capkin/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace capkin {

/// The compartmental dynamics on the reduced state space C = Π [0, c_i]:
/// one coordinate n_i per compartment (particles), free space implicit as
/// s_i = c_i − n_i. Immutable after construction.
///
///   dn_i/dt = Σ_{j ∈ donors(i)} K_ji(n_j, c_i − n_i)
///           − Σ_{j ∈ recipients(i)} K_ij(n_i, c_j − n_j)
class ReducedSystem {
public:
    struct Edge {
        int from, to;
        TransitionRate rate;
    };

    static ReducedSystem make(const CompartmentalGraph& g, const RateRegistry* registry = nullptr) {
        ReducedSystem sys;
        sys.graph_ = g;
        for (std::size_t e = 0; e < g.edges().size(); ++e) {
            const auto& edge = g.edges()[e];
            TransitionRate rate = TransitionRate::make(edge.rate, registry);
            if (edge.rate.kind == RateKind::custom)
                validate_transition_rate(rate, g.capacities()[edge.from], g.capacities()[edge.to],
                                         "edges[" + std::to_string(e) + "] rate '" +
                                             edge.rate.name + "'");
            sys.edges_.push_back({edge.from, edge.to, std::move(rate)});
        }
        return sys;
    }

    int dim() const { return graph_.size(); }
    const CompartmentalGraph& graph() const { return graph_; }
    const std::vector<double>& capacities() const { return graph_.capacities(); }
    const std::vector<Edge>& edges() const { return edges_; }

    /// I(c) = Σ c_i, the largest admissible level of the first integral.
    double total_capacity() const {
        double s = 0.0;
        for (double c : graph_.capacities())
            s += c;
        return s;
    }

    bool in_box(const std::vector<double>& n, double slack = tol::state) const {
        if (static_cast<int>(n.size()) != dim())
            return false;
        for (int i = 0; i < dim(); ++i)
            if (!(n[i] >= -slack && n[i] <= graph_.capacities()[i] + slack))
                return false;
        return true;
    }

    void check_in_box(const std::vector<double>& n) const {
        if (static_cast<int>(n.size()) != dim())
            throw StateOutOfBoxError("state has " + std::to_string(n.size()) +
                                     " coordinates, expected " + std::to_string(dim()));
        for (int i = 0; i < dim(); ++i) {
            const double ci = graph_.capacities()[i];
            if (!(n[i] >= -tol::state && n[i] <= ci + tol::state))
                throw StateOutOfBoxError("coordinate n" + std::to_string(i + 1) + " = " +
                                         std::to_string(n[i]) + " outside [0, " +
                                         std::to_string(ci) + "]");
        }
    }

    /// Right-hand side of the reduced system. Arguments are clamped into
    /// the box before rate evaluation so that roundoff-level excursions
    /// (within the membership slack) cannot produce negative rates.
    std::vector<double> rhs(const std::vector<double>& n) const {
        check_in_box(n);
        return rhs_clamped(n);
    }

    /// rhs without the box-membership check, evaluating rates at the
    /// coordinatewise projection onto the box. Integrator stage points may
    /// overshoot the box transiently; this keeps those evaluations defined.
    std::vector<double> rhs_clamped(const std::vector<double>& n) const {
        std::vector<double> dn(dim(), 0.0);
        for (const auto& e : edges_) {
            const double ni = clamp_coord(n[e.from], e.from);
            const double sj = clamp_coord(graph_.capacities()[e.to] - n[e.to], e.to);
            const double v = e.rate.value(ni, sj);
            dn[e.from] -= v;
            dn[e.to] += v;
        }
        return dn;
    }

    /// Jacobian of rhs. For each edge (i,j) with rate K evaluated at
    /// (n_i, c_j − n_j) and partials K_n, K_s:
    ///   J_ii −= K_n,  J_ij += K_s,  J_ji += K_n,  J_jj −= K_s,
    /// so every column sums to zero, off-diagonal entries are nonnegative
    /// and diagonal entries nonpositive (cooperative structure).
    std::vector<std::vector<double>> jacobian(const std::vector<double>& n) const {
        check_in_box(n);
        std::vector<std::vector<double>> J(dim(), std::vector<double>(dim(), 0.0));
        for (const auto& e : edges_) {
            const int i = e.from, j = e.to;
            const double ni = clamp_coord(n[i], i);
            const double sj = clamp_coord(graph_.capacities()[j] - n[j], j);
            const double kn = e.rate.dn(ni, sj);
            const double ks = e.rate.ds(ni, sj);
            J[i][i] -= kn;
            J[i][j] += ks;
            J[j][i] += kn;
            J[j][j] -= ks;
        }
        return J;
    }

private:
    double clamp_coord(double v, int i) const {
        return std::min(std::max(v, 0.0), graph_.capacities()[i]);
    }

    CompartmentalGraph graph_;
    std::vector<Edge> edges_;
};

/// The first integral I(n) = Σ n_i.
inline double level_of(const std::vector<double>& n) {
    double s = 0.0;
    for (double v : n)
        s += v;
    return s;
}

/// Matrix measure induced by the ℓ¹ norm:
/// μ₁(A) = max_i [ A_ii + Σ_{j≠i} |A_ji| ].
inline double matrix_measure_l1(const std::vector<std::vector<double>>& a) {
    const int m = static_cast<int>(a.size());
    double mu = -1e300;
    for (int i = 0; i < m; ++i) {
        double col = a[i][i];
        for (int j = 0; j < m; ++j)
            if (j != i)
                col += std::abs(a[j][i]);
        mu = std::max(mu, col);
    }
    return mu;
}

} // namespace capkin

#endif
