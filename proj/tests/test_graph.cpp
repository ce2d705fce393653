#include "oracles.hpp"

#include <capkin/graph.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace capkin;

namespace {
GraphSpec triangle_spec() {
    GraphSpec s;
    s.capacities = {1.0, 1.0, 1.0};
    s.edges = {{1, 2, {}}, {2, 3, {}}, {3, 1, {}}};
    return s;
}
} // namespace

TEST_CASE("valid graph builds with defaulted labels") {
    const auto g = CompartmentalGraph::build(triangle_spec());
    REQUIRE(g.size() == 3);
    REQUIRE(g.labels() == std::vector<std::string>{"q1", "q2", "q3"});
    REQUIRE(g.capacities() == std::vector<double>{1.0, 1.0, 1.0});
    REQUIRE(g.edges().size() == 3);
    // stored 0-based
    CHECK(g.edges()[0].from == 0);
    CHECK(g.edges()[0].to == 1);
    CHECK(g.edges()[2].from == 2);
    CHECK(g.edges()[2].to == 0);
}

TEST_CASE("explicit labels are kept and must match the compartment count") {
    GraphSpec s = triangle_spec();
    s.labels = {"lung", "blood", "tissue"};
    CHECK(CompartmentalGraph::build(s).labels()[1] == "blood");
    s.labels = {"lung", "blood"};
    CHECK_THROWS_AS(CompartmentalGraph::build(s), GraphSpecError);
}

TEST_CASE("graph validation rejects malformed specs") {
    SECTION("no compartments") {
        GraphSpec s;
        CHECK_THROWS_AS(CompartmentalGraph::build(s), GraphSpecError);
    }
    SECTION("nonpositive capacity") {
        GraphSpec s = triangle_spec();
        s.capacities[1] = 0.0;
        CHECK_THROWS_AS(CompartmentalGraph::build(s), NonpositiveCapacityError);
        s.capacities[1] = -2.0;
        CHECK_THROWS_AS(CompartmentalGraph::build(s), NonpositiveCapacityError);
    }
    SECTION("loop edge") {
        GraphSpec s = triangle_spec();
        s.edges.push_back({2, 2, {}});
        CHECK_THROWS_AS(CompartmentalGraph::build(s), LoopEdgeError);
    }
    SECTION("duplicate edge") {
        GraphSpec s = triangle_spec();
        s.edges.push_back({1, 2, {}});
        CHECK_THROWS_AS(CompartmentalGraph::build(s), DuplicateEdgeError);
    }
    SECTION("dangling endpoint") {
        GraphSpec s = triangle_spec();
        s.edges.push_back({1, 4, {}});
        CHECK_THROWS_AS(CompartmentalGraph::build(s), DanglingEndpointError);
        s.edges.back() = {0, 2, {}};
        CHECK_THROWS_AS(CompartmentalGraph::build(s), DanglingEndpointError);
    }
    SECTION("invalid rate parameters surface with edge context") {
        GraphSpec s = triangle_spec();
        s.edges[1].rate.k = -1.0;
        CHECK_THROWS_AS(CompartmentalGraph::build(s), RateValidationError);
        try {
            CompartmentalGraph::build(s);
        } catch (const RateValidationError& e) {
            CHECK(std::string(e.what()).find("edges[1]") != std::string::npos);
        }
    }
}

TEST_CASE("single compartment without edges is a valid graph") {
    GraphSpec s;
    s.capacities = {2.0};
    const auto g = CompartmentalGraph::build(s);
    CHECK(g.size() == 1);
    CHECK(is_strongly_connected(g));
}

TEST_CASE("donor and recipient index follows the arcs") {
    GraphSpec s = triangle_spec();
    s.edges.push_back({1, 3, {}});   // extra chord
    const auto g = CompartmentalGraph::build(s);
    const auto idx = donors_recipients(g);
    // donors[i] = in-neighbours, recipients[i] = out-neighbours (0-based)
    CHECK(idx.donors[0] == std::vector<int>{2});
    CHECK(idx.donors[2] == std::vector<int>{0, 1});
    CHECK(idx.recipients[0] == std::vector<int>{1, 2});
    CHECK(idx.recipients[2] == std::vector<int>{0});
}

TEST_CASE("strong components of a path graph") {
    GraphSpec s;
    s.capacities = {1.0, 1.0, 1.0};
    s.edges = {{1, 2, {}}, {2, 3, {}}};
    const auto g = CompartmentalGraph::build(s);
    const auto sc = strong_components(g);
    REQUIRE(sc.components.size() == 3);
    CHECK_FALSE(sc.strongly_connected);
    CHECK_FALSE(is_strongly_connected(g));
    // sorted by smallest vertex
    CHECK(sc.components[0] == std::vector<int>{0});
    CHECK(sc.components[1] == std::vector<int>{1});
    CHECK(sc.components[2] == std::vector<int>{2});
    for (int v = 0; v < 3; ++v)
        CHECK(sc.component_of[v] == v);
}

TEST_CASE("strong components group two-cycles together") {
    GraphSpec s;
    s.capacities = {1.0, 1.0, 1.0, 1.0};
    s.edges = {{1, 2, {}}, {2, 1, {}}, {3, 4, {}}, {4, 3, {}}, {2, 3, {}}};
    const auto g = CompartmentalGraph::build(s);
    const auto sc = strong_components(g);
    REQUIRE(sc.components.size() == 2);
    CHECK(sc.components[0] == std::vector<int>{0, 1});
    CHECK(sc.components[1] == std::vector<int>{2, 3});
    CHECK(sc.component_of[0] == sc.component_of[1]);
    CHECK(sc.component_of[2] == sc.component_of[3]);
    CHECK_FALSE(sc.strongly_connected);
}

TEST_CASE("strong connectivity matches a reachability-closure oracle") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<int> msize(1, 6);
    int both = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto spec = oracle::random_spec(rng, msize(rng));
        const auto g = CompartmentalGraph::build(spec);
        const bool lib = is_strongly_connected(g);
        const bool ref = oracle::graph_sc(g);
        REQUIRE(lib == ref);
        both += lib ? 1 : 0;
    }
    // the sample must exercise both outcomes
    CHECK(both > 0);
    CHECK(both < 300);
}

TEST_CASE("component partition is consistent with pairwise mutual reachability") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = CompartmentalGraph::build(oracle::random_spec(rng, 5));
        std::vector<std::pair<int, int>> arcs;
        for (const auto& e : g.edges())
            arcs.emplace_back(e.from, e.to);
        const auto reach = oracle::closure(5, arcs);
        const auto sc = strong_components(g);
        for (int u = 0; u < 5; ++u)
            for (int v = 0; v < 5; ++v) {
                const bool same = sc.component_of[u] == sc.component_of[v];
                CHECK(same == (reach[u][v] && reach[v][u]));
            }
    }
}
