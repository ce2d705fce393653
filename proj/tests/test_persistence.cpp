#include "oracles.hpp"

#include <capkin/persistence.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace capkin;

namespace {

CompartmentalGraph triangle() {
    GraphSpec s;
    s.capacities = {1.0, 1.0, 1.0};
    s.edges = {{1, 2, {}}, {2, 3, {}}, {3, 1, {}}};
    return CompartmentalGraph::build(s);
}

void require_valid_certificates(const Crn& crn, const PersistenceVerdict& v) {
    REQUIRE(v.global_certificate.has_value());
    const auto& g = *v.global_certificate;
    for (const auto& q : g.c)
        REQUIRE(q > 0);
    for (const auto& r : oracle::certificate_residual(crn, g.c))
        REQUIRE(r == 0);

    const auto net = build_petri(crn);
    const auto siphons = minimal_siphons(net);
    REQUIRE(v.siphon_certificates.size() == siphons.size());
    for (std::size_t i = 0; i < siphons.size(); ++i) {
        const auto& [siphon, cert] = v.siphon_certificates[i];
        REQUIRE(siphon == siphons[i]);
        bool nonzero = false;
        for (int j = 0; j < crn.species_count(); ++j) {
            REQUIRE(cert.c[j] >= 0);
            nonzero = nonzero || cert.c[j] != 0;
            // support containment in the siphon
            if (cert.c[j] != 0)
                REQUIRE(std::find(siphon.begin(), siphon.end(), j) != siphon.end());
        }
        REQUIRE(nonzero);
        for (const auto& r : oracle::certificate_residual(crn, cert.c))
            REQUIRE(r == 0);
    }
}

} // namespace

TEST_CASE("structural check certifies strongly connected graphs") {
    const auto g = triangle();
    const auto v = check_persistence_structural(g);
    CHECK(v.verdict == PersistenceVerdict::Verdict::persistent_certified);
    CHECK(v.method == PersistenceVerdict::Method::structural_corollary);
    require_valid_certificates(compartmental_crn(g), v);
}

TEST_CASE("structural check is inconclusive without strong connectivity") {
    GraphSpec s;
    s.capacities = {1.0, 1.0};
    s.edges = {{1, 2, {}}};
    const auto v = check_persistence_structural(CompartmentalGraph::build(s));
    CHECK(v.verdict == PersistenceVerdict::Verdict::inconclusive);
    CHECK_FALSE(v.note.empty());
    CHECK(v.siphon_certificates.empty());
}

TEST_CASE("general check certifies the triangle network") {
    const auto crn = compartmental_crn(triangle());
    const auto v = check_persistence_theorem1(crn);
    CHECK(v.verdict == PersistenceVerdict::Verdict::persistent_certified);
    CHECK(v.method == PersistenceVerdict::Method::theorem1_general);
    require_valid_certificates(crn, v);
}

TEST_CASE("general check is inconclusive on the path network") {
    GraphSpec s;
    s.capacities = {1.0, 1.0};
    s.edges = {{1, 2, {}}};
    const auto crn = compartmental_crn(CompartmentalGraph::build(s));
    const auto v = check_persistence_theorem1(crn);
    CHECK(v.verdict == PersistenceVerdict::Verdict::inconclusive);
    // a global strictly positive certificate exists, so the note must point
    // at a siphon whose supported certificate is missing
    CHECK(v.note.find("siphon") != std::string::npos);
}

TEST_CASE("general check fails condition one on autocatalytic growth") {
    Reaction r;
    r.y = {1};
    r.yp = {2};
    r.rate = RateFunction::mass_action(1.0, r.y);
    const auto crn = Crn::make({"A"}, {r});
    const auto v = check_persistence_theorem1(crn);
    CHECK(v.verdict == PersistenceVerdict::Verdict::inconclusive);
    CHECK(v.note.find("condition (1)") != std::string::npos);
    CHECK_FALSE(v.global_certificate.has_value());
}

TEST_CASE("verdict and method names serialize to stable strings") {
    CHECK(std::string(verdict_name(PersistenceVerdict::Verdict::persistent_certified)) ==
          "persistent_certified");
    CHECK(std::string(verdict_name(PersistenceVerdict::Verdict::inconclusive)) == "inconclusive");
    CHECK(std::string(method_name(PersistenceVerdict::Method::structural_corollary)) ==
          "structural_corollary");
    CHECK(std::string(method_name(PersistenceVerdict::Method::theorem1_general)) ==
          "theorem1_general");
}

TEST_CASE("structural and general checkers agree on random SC graphs") {
    std::mt19937_64 rng(2718281);
    std::uniform_int_distribution<int> msize(2, 5);
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = CompartmentalGraph::build(oracle::random_sc_spec(rng, msize(rng)));
        const auto crn = compartmental_crn(g);
        const auto vs = check_persistence_structural(g);
        const auto vt = check_persistence_theorem1(crn);
        REQUIRE(vs.verdict == PersistenceVerdict::Verdict::persistent_certified);
        REQUIRE(vt.verdict == PersistenceVerdict::Verdict::persistent_certified);
        require_valid_certificates(crn, vs);
        require_valid_certificates(crn, vt);
    }
}

TEST_CASE("the place cap propagates through the general checker") {
    GraphSpec s;
    const int m = 13;
    for (int i = 0; i < m; ++i)
        s.capacities.push_back(1.0);
    for (int i = 0; i < m; ++i)
        s.edges.push_back({i + 1, (i + 1) % m + 1, {}});
    const auto crn = compartmental_crn(CompartmentalGraph::build(s));
    CHECK_THROWS_AS(check_persistence_theorem1(crn), PlaceCapExceededError);
    CHECK_NOTHROW(check_persistence_theorem1(crn, 26));
    // the structural path has no cap: the catalogue is closed form
    CHECK(check_persistence_structural(CompartmentalGraph::build(s)).verdict ==
          PersistenceVerdict::Verdict::persistent_certified);
}
