#ifndef CAPKIN_PETRI_HPP
#define CAPKIN_PETRI_HPP

#include "capkin/crn.hpp"
#include "capkin/errors.hpp"
#include "capkin/graph.hpp"
#include "capkin/tolerances.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace capkin {

/// Bipartite places/transitions net with stoichiometric edge weights.
/// An open aggregate: nets normally come from build_petri, but callers may
/// assemble one directly (e.g. nets that no valid CRN induces).
struct PetriNet {
    std::vector<std::string> place_names;
    struct Transition {
        std::string name;
        std::vector<std::pair<int, int>> in;   // (place, weight > 0): place -> transition
        std::vector<std::pair<int, int>> out;  // (place, weight > 0): transition -> place
    };
    std::vector<Transition> transitions;

    int place_count() const { return static_cast<int>(place_names.size()); }
    int transition_count() const { return static_cast<int>(transitions.size()); }
};

/// Petri net of a CRN: one place per species, one transition per reaction,
/// arc weights equal to the stoichiometric coefficients (zero-weight arcs
/// absent).
inline PetriNet build_petri(const Crn& crn) {
    PetriNet net;
    net.place_names = crn.species_names();
    const int M = crn.species_count();
    for (int i = 0; i < crn.reaction_count(); ++i) {
        const auto& r = crn.reactions()[i];
        PetriNet::Transition t;
        t.name = "R" + std::to_string(i + 1);
        for (int j = 0; j < M; ++j) {
            if (r.y[j] > 0)
                t.in.push_back({j, r.y[j]});
            if (r.yp[j] > 0)
                t.out.push_back({j, r.yp[j]});
        }
        net.transitions.push_back(std::move(t));
    }
    return net;
}

/// True iff every transition with an output arc into σ also has an input
/// arc from σ (In(σ) ⊆ Out(σ) as transition sets).
inline bool is_siphon(const PetriNet& net, const std::vector<int>& sigma) {
    if (sigma.empty())
        throw EmptySetError();
    std::vector<char> in_sigma(net.place_count(), 0);
    for (int p : sigma) {
        if (p < 0 || p >= net.place_count())
            throw InputError("place index " + std::to_string(p) + " out of range");
        in_sigma[p] = 1;
    }
    for (const auto& t : net.transitions) {
        bool outputs_into = false;
        for (const auto& [p, w] : t.out)
            if (in_sigma[p]) {
                outputs_into = true;
                break;
            }
        if (!outputs_into)
            continue;
        bool inputs_from = false;
        for (const auto& [p, w] : t.in)
            if (in_sigma[p]) {
                inputs_from = true;
                break;
            }
        if (!inputs_from)
            return false;
    }
    return true;
}

namespace detail {

inline std::vector<int> mask_to_indices(std::uint64_t mask) {
    std::vector<int> v;
    for (int p = 0; mask != 0; ++p, mask >>= 1)
        if (mask & 1)
            v.push_back(p);
    return v;
}

} // namespace detail

/// Complete list of inclusion-minimal siphons, as sorted place-index sets
/// in lexicographic order. Complexity is exponential in the worst case, so
/// nets beyond place_cap places are refused; strongly connected
/// compartmental graphs should use closed_form_siphons instead.
///
/// Algorithm: depth-first place-set growth with the standard closure rule —
/// while some transition outputs into the current set without an input from
/// it, branch over that transition's input places — memoized on the place
/// bitmask, pruning supersets of already-recorded siphons, followed by an
/// inclusion-minimality filter.
inline std::vector<std::vector<int>> minimal_siphons(const PetriNet& net,
                                                     int place_cap = tol::place_cap) {
    const int M = net.place_count();
    if (M > place_cap || M > 63)
        throw PlaceCapExceededError(M, std::min(place_cap, 63));
    const int R = net.transition_count();
    std::vector<std::uint64_t> in_mask(R, 0), out_mask(R, 0);
    for (int t = 0; t < R; ++t) {
        for (const auto& [p, w] : net.transitions[t].in)
            in_mask[t] |= std::uint64_t(1) << p;
        for (const auto& [p, w] : net.transitions[t].out)
            out_mask[t] |= std::uint64_t(1) << p;
    }

    std::unordered_set<std::uint64_t> visited;
    std::vector<std::uint64_t> found;

    const auto grow = [&](auto&& self, std::uint64_t sigma) -> void {
        if (!visited.insert(sigma).second)
            return;
        for (std::uint64_t s : found)
            if ((sigma & s) == s)
                return;   // contains a known siphon; cannot be a new minimal one
        int violating = -1;
        for (int t = 0; t < R; ++t) {
            if ((out_mask[t] & sigma) != 0 && (in_mask[t] & sigma) == 0) {
                violating = t;
                break;
            }
        }
        if (violating < 0) {
            found.push_back(sigma);
            return;
        }
        std::uint64_t candidates = in_mask[violating];
        if (candidates == 0)
            return;       // source transition feeding σ: unfixable branch
        for (int p = 0; candidates != 0; ++p, candidates >>= 1)
            if (candidates & 1)
                self(self, sigma | (std::uint64_t(1) << p));
    };
    for (int p = 0; p < M; ++p)
        grow(grow, std::uint64_t(1) << p);

    std::vector<std::uint64_t> minimal;
    for (std::uint64_t s : found) {
        bool keep = true;
        for (std::uint64_t s2 : found)
            if (s2 != s && (s & s2) == s2) {
                keep = false;
                break;
            }
        if (keep)
            minimal.push_back(s);
    }
    std::sort(minimal.begin(), minimal.end());
    minimal.erase(std::unique(minimal.begin(), minimal.end()), minimal.end());

    std::vector<std::vector<int>> out;
    out.reserve(minimal.size());
    for (std::uint64_t s : minimal)
        out.push_back(detail::mask_to_indices(s));
    std::sort(out.begin(), out.end());
    return out;
}

/// Minimal siphons of the compartmental CRN of a strongly connected graph,
/// in closed form: {N_1..N_m}, the pairs {N_i, S_i}, and {S_1..S_m} —
/// m + 2 sets, emitted in the same lexicographic order minimal_siphons
/// uses. Place indices follow the compartmental species order N_1..N_m,
/// S_1..S_m. The degenerate m = 1 graph has no transitions, so every
/// nonempty place set is vacuously a siphon and the minimal ones are the
/// two singletons. Throws NotStronglyConnectedError otherwise; callers
/// must fall back to minimal_siphons.
inline std::vector<std::vector<int>> closed_form_siphons(const CompartmentalGraph& g) {
    if (!is_strongly_connected(g))
        throw NotStronglyConnectedError(
            "the closed-form siphon catalogue requires a strongly connected compartmental "
            "graph; enumerate siphons on the Petri net instead");
    const int m = g.size();
    if (m == 1)
        return {{0}, {1}};
    std::vector<std::vector<int>> out;
    out.reserve(m + 2);
    std::vector<int> all_n(m);
    for (int i = 0; i < m; ++i)
        all_n[i] = i;
    out.push_back(all_n);
    for (int i = 0; i < m; ++i)
        out.push_back({i, m + i});
    std::vector<int> all_s(m);
    for (int i = 0; i < m; ++i)
        all_s[i] = m + i;
    out.push_back(all_s);
    return out;
}

/// Strong connectivity of the bipartite digraph including transition
/// vertices.
inline bool petri_strongly_connected(const PetriNet& net) {
    const int M = net.place_count(), R = net.transition_count();
    std::vector<std::vector<int>> adj(M + R);
    for (int t = 0; t < R; ++t) {
        for (const auto& [p, w] : net.transitions[t].in)
            adj[p].push_back(M + t);
        for (const auto& [p, w] : net.transitions[t].out)
            adj[M + t].push_back(p);
    }
    return detail::tarjan_scc(adj).size() == 1;
}

} // namespace capkin

#endif
