#ifndef CAPKIN_CRN_HPP
#define CAPKIN_CRN_HPP

#include "capkin/errors.hpp"
#include "capkin/graph.hpp"
#include "capkin/rate.hpp"
#include "capkin/tolerances.hpp"

#include <string>
#include <utility>
#include <vector>

namespace capkin {

/// Rate function of one reaction over the full species state vector, with
/// an explicit dependency support (the species the rate may depend on).
/// Two forms cover the library's needs:
///   - a two-argument TransitionRate bound to a (particle, space) species
///     pair — the compartmental construction;
///   - generic mass action k * prod_j x_j^{y_j} derived from the reactant
///     stoichiometry — for free-standing CRN fixtures.
class RateFunction {
public:
    static RateFunction transition(TransitionRate rate, int particle_species, int space_species) {
        RateFunction f;
        f.form_ = Form::two_arg;
        f.rate_ = std::move(rate);
        f.pn_ = particle_species;
        f.ps_ = space_species;
        f.support_ = particle_species < space_species
                         ? std::vector<int>{particle_species, space_species}
                         : std::vector<int>{space_species, particle_species};
        return f;
    }

    /// Mass action rate built from a reactant stoichiometry vector y.
    static RateFunction mass_action(double k, const std::vector<int>& y) {
        if (!(k > 0.0))
            throw RateValidationError("mass action coefficient must be positive, got " + std::to_string(k));
        RateFunction f;
        f.form_ = Form::product;
        f.k_ = k;
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (y[j] > 0) {
                f.support_.push_back(static_cast<int>(j));
                f.exponent_.push_back(y[j]);
            }
        }
        return f;
    }

    double value(const std::vector<double>& x) const {
        if (form_ == Form::two_arg)
            return rate_.value(x[pn_], x[ps_]);
        double v = k_;
        for (std::size_t i = 0; i < support_.size(); ++i) {
            const double xi = x[support_[i]];
            for (int e = 0; e < exponent_[i]; ++e)
                v *= xi;
        }
        return v;
    }

    /// Sorted species indices the rate depends on (reactant support).
    const std::vector<int>& support() const { return support_; }

    RateKind kind() const {
        return form_ == Form::two_arg ? rate_.spec().kind : RateKind::mass_action;
    }
    /// The underlying two-argument rate when this is a compartmental
    /// transition rate, else nullptr.
    const TransitionRate* transition_rate() const {
        return form_ == Form::two_arg ? &rate_ : nullptr;
    }
    /// (particle species, space species) indices for the two-argument form.
    std::pair<int, int> transition_indices() const { return {pn_, ps_}; }
    double mass_action_k() const { return form_ == Form::product ? k_ : rate_.spec().k; }

private:
    enum class Form { two_arg, product };
    Form form_ = Form::product;
    TransitionRate rate_;
    int pn_ = -1, ps_ = -1;
    double k_ = 1.0;
    std::vector<int> support_;
    std::vector<int> exponent_;
};

/// One reaction: reactant stoichiometry y, product stoichiometry y', and a
/// rate function.
struct Reaction {
    std::vector<int> y;
    std::vector<int> yp;
    RateFunction rate;
};

/// A chemical reaction network: species plus reactions. Immutable after
/// construction; safe to share across concurrent readers.
class Crn {
public:
    static Crn make(std::vector<std::string> species_names, std::vector<Reaction> reactions) {
        const std::size_t M = species_names.size();
        if (M == 0)
            throw InputError("a CRN needs at least one species");
        for (std::size_t i = 0; i < reactions.size(); ++i) {
            const auto& r = reactions[i];
            if (r.y.size() != M || r.yp.size() != M)
                throw InputError("reaction " + std::to_string(i + 1) +
                                 ": stoichiometric vectors must have one entry per species");
            for (std::size_t j = 0; j < M; ++j) {
                if (r.y[j] < 0 || r.yp[j] < 0)
                    throw InputError("reaction " + std::to_string(i + 1) +
                                     ": stoichiometric entries must be nonnegative");
            }
            if (r.y == r.yp)
                throw InputError("reaction " + std::to_string(i + 1) +
                                 ": reactant and product complexes are identical; a reaction "
                                 "must change state");
        }
        Crn crn;
        crn.species_names_ = std::move(species_names);
        crn.reactions_ = std::move(reactions);
        return crn;
    }

    int species_count() const { return static_cast<int>(species_names_.size()); }
    int reaction_count() const { return static_cast<int>(reactions_.size()); }
    const std::vector<std::string>& species_names() const { return species_names_; }
    const std::vector<Reaction>& reactions() const { return reactions_; }

private:
    std::vector<std::string> species_names_;
    std::vector<Reaction> reactions_;
};

/// M x R integer matrix whose column i is y'_i - y_i.
inline std::vector<std::vector<int>> stoichiometric_matrix(const Crn& crn) {
    const int M = crn.species_count(), R = crn.reaction_count();
    std::vector<std::vector<int>> gamma(M, std::vector<int>(R, 0));
    for (int i = 0; i < R; ++i) {
        const auto& r = crn.reactions()[i];
        for (int j = 0; j < M; ++j)
            gamma[j][i] = r.yp[j] - r.y[j];
    }
    return gamma;
}

/// Kinetic ODE right-hand side: sum_i K_i(x) * (y'_i - y_i). Coordinates
/// with zero net stoichiometry in a reaction are left untouched by it, and
/// a reaction whose dependency support contains a zero coordinate
/// contributes nothing.
inline std::vector<double> ode_rhs(const Crn& crn, const std::vector<double>& x) {
    const int M = crn.species_count();
    if (static_cast<int>(x.size()) != M)
        throw InputError("state vector has " + std::to_string(x.size()) + " entries, expected " +
                         std::to_string(M));
    for (int j = 0; j < M; ++j) {
        if (x[j] < -tol::state)
            throw NegativeStateError(static_cast<std::size_t>(j), x[j]);
    }
    std::vector<double> dx(M, 0.0);
    for (const auto& r : crn.reactions()) {
        bool support_zero = false;
        for (int j : r.rate.support()) {
            if (x[j] <= 0.0) {
                support_zero = true;
                break;
            }
        }
        if (support_zero)
            continue;
        const double v = r.rate.value(x);
        for (int j = 0; j < M; ++j) {
            const int d = r.yp[j] - r.y[j];
            if (d != 0)
                dx[j] += v * d;
        }
    }
    return dx;
}

/// CRN induced by a compartmental graph: species N_1..N_m (particles) then
/// S_1..S_m (free space); one reaction N_i + S_j -> N_j + S_i per edge
/// (i,j), in edge order. Custom edge rates are validated numerically
/// against the kinetics assumptions over [0,c_i] x [0,c_j].
inline Crn compartmental_crn(const CompartmentalGraph& g, const RateRegistry* registry = nullptr) {
    const int m = g.size();
    std::vector<std::string> names;
    names.reserve(2 * m);
    for (int i = 0; i < m; ++i)
        names.push_back("N" + std::to_string(i + 1));
    for (int i = 0; i < m; ++i)
        names.push_back("S" + std::to_string(i + 1));

    std::vector<Reaction> reactions;
    reactions.reserve(g.edges().size());
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const auto& edge = g.edges()[e];
        TransitionRate rate = TransitionRate::make(edge.rate, registry);
        if (edge.rate.kind == RateKind::custom)
            validate_transition_rate(rate, g.capacities()[edge.from], g.capacities()[edge.to],
                                     "edges[" + std::to_string(e) + "] rate '" + edge.rate.name + "'");
        const int Ni = edge.from, Nj = edge.to;
        const int Si = m + edge.from, Sj = m + edge.to;
        Reaction r{std::vector<int>(2 * m, 0), std::vector<int>(2 * m, 0),
                   RateFunction::transition(std::move(rate), Ni, Sj)};
        r.y[Ni] = 1;
        r.y[Sj] = 1;
        r.yp[Nj] = 1;
        r.yp[Si] = 1;
        reactions.push_back(std::move(r));
    }
    return Crn::make(std::move(names), std::move(reactions));
}

} // namespace capkin

#endif
