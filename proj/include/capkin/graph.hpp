#ifndef CAPKIN_GRAPH_HPP
#define CAPKIN_GRAPH_HPP

#include "capkin/errors.hpp"
#include "capkin/rate.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace capkin {

/// Raw user-facing description of a compartmental graph. Compartment and
/// edge endpoints are 1-based, matching the q_1..q_m naming used in input
/// documents and reports.
struct GraphSpec {
    std::vector<std::string> labels;     // optional; defaults to q1..qm
    std::vector<double> capacities;      // one per compartment, > 0
    struct Edge {
        int from = 0, to = 0;            // 1-based
        RateSpec rate;
    };
    std::vector<Edge> edges;
};

/// Validated directed graph of compartments with capacities and per-edge
/// rate specifications. Immutable after construction; safe to share across
/// concurrent readers.
class CompartmentalGraph {
public:
    struct Edge {
        int from = 0, to = 0;            // 0-based
        RateSpec rate;
    };

    /// Validates a spec and builds the graph. Rejects loop edges, duplicate
    /// ordered pairs, nonpositive capacities and out-of-range endpoints,
    /// naming the offending element.
    static CompartmentalGraph build(const GraphSpec& spec) {
        CompartmentalGraph g;
        const int m = static_cast<int>(spec.capacities.size());
        if (m < 1)
            throw GraphSpecError("graph needs at least one compartment");
        g.capacities_ = spec.capacities;
        for (int i = 0; i < m; ++i) {
            if (!(spec.capacities[i] > 0.0))
                throw NonpositiveCapacityError(i + 1, spec.capacities[i]);
        }
        if (!spec.labels.empty()) {
            if (static_cast<int>(spec.labels.size()) != m)
                throw GraphSpecError("labels and capacities disagree on the compartment count");
            g.labels_ = spec.labels;
        } else {
            for (int i = 0; i < m; ++i)
                g.labels_.push_back("q" + std::to_string(i + 1));
        }
        std::set<std::pair<int, int>> seen;
        for (std::size_t e = 0; e < spec.edges.size(); ++e) {
            const auto& edge = spec.edges[e];
            if (edge.from < 1 || edge.from > m)
                throw DanglingEndpointError(edge.from, e, m);
            if (edge.to < 1 || edge.to > m)
                throw DanglingEndpointError(edge.to, e, m);
            if (edge.from == edge.to)
                throw LoopEdgeError(edge.from, e);
            if (!seen.insert({edge.from, edge.to}).second)
                throw DuplicateEdgeError(edge.from, edge.to, e);
            validate_rate_spec(edge.rate, "edges[" + std::to_string(e) + "].rate");
            g.edges_.push_back({edge.from - 1, edge.to - 1, edge.rate});
        }
        return g;
    }

    int size() const { return static_cast<int>(capacities_.size()); }
    const std::vector<double>& capacities() const { return capacities_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Edge>& edges() const { return edges_; }

private:
    std::vector<std::string> labels_;
    std::vector<double> capacities_;
    std::vector<Edge> edges_;
};

/// Index sets of donor and recipient compartments: donors[i] lists j with
/// an edge (j,i); recipients[i] lists j with an edge (i,j). All 0-based,
/// sorted ascending.
struct DonorRecipientIndex {
    std::vector<std::vector<int>> donors;
    std::vector<std::vector<int>> recipients;
};

inline DonorRecipientIndex donors_recipients(const CompartmentalGraph& g) {
    DonorRecipientIndex idx;
    idx.donors.resize(g.size());
    idx.recipients.resize(g.size());
    for (const auto& e : g.edges()) {
        idx.donors[e.to].push_back(e.from);
        idx.recipients[e.from].push_back(e.to);
    }
    for (auto& v : idx.donors)
        std::sort(v.begin(), v.end());
    for (auto& v : idx.recipients)
        std::sort(v.begin(), v.end());
    return idx;
}

/// Partition of the vertices into strongly connected components. Components
/// are sorted by their smallest vertex, vertices ascending within each.
struct StrongComponents {
    std::vector<std::vector<int>> components;
    std::vector<int> component_of;       // vertex -> index into components
    bool strongly_connected = false;
};

namespace detail {

/// Iterative Tarjan SCC over an adjacency list.
inline std::vector<std::vector<int>> tarjan_scc(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int next_index = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0)
            continue;
        std::vector<Frame> call;
        call.push_back({root, 0});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.child < adj[f.v].size()) {
                const int w = adj[f.v][f.child++];
                if (index[w] < 0) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    std::vector<int> comp;
                    for (;;) {
                        const int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp.push_back(w);
                        if (w == f.v)
                            break;
                    }
                    std::sort(comp.begin(), comp.end());
                    comps.push_back(std::move(comp));
                }
                const int v = f.v;
                call.pop_back();
                if (!call.empty())
                    low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

} // namespace detail

inline StrongComponents strong_components(const CompartmentalGraph& g) {
    std::vector<std::vector<int>> adj(g.size());
    for (const auto& e : g.edges())
        adj[e.from].push_back(e.to);
    StrongComponents out;
    out.components = detail::tarjan_scc(adj);
    out.component_of.assign(g.size(), -1);
    for (std::size_t c = 0; c < out.components.size(); ++c)
        for (int v : out.components[c])
            out.component_of[v] = static_cast<int>(c);
    out.strongly_connected = out.components.size() == 1;
    return out;
}

inline bool is_strongly_connected(const CompartmentalGraph& g) {
    return strong_components(g).strongly_connected;
}

} // namespace capkin

#endif
