#ifndef CAPKIN_IO_HPP
#define CAPKIN_IO_HPP

#include "capkin/crn.hpp"
#include "capkin/equilibrium.hpp"
#include "capkin/errors.hpp"
#include "capkin/graph.hpp"
#include "capkin/integrate.hpp"
#include "capkin/persistence.hpp"
#include "capkin/petri.hpp"
#include "capkin/rational.hpp"
#include "capkin/verify.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace capkin::io {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
    throw InputError(path + ": " + what);
}

inline void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                       const std::string& path) {
    if (!obj.is_object())
        fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            ok = ok || it.key() == k;
        if (!ok)
            fail(path, "unknown field \"" + it.key() + "\"");
    }
}

inline const json& member(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end())
        fail(path, std::string("missing required field \"") + key + "\"");
    return *it;
}

inline double number_at(const json& v, const std::string& path) {
    if (!v.is_number())
        fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        fail(path, "expected a finite number");
    return d;
}

inline int int_at(const json& v, const std::string& path) {
    if (!v.is_number_integer())
        fail(path, "expected an integer");
    return v.get<int>();
}

inline std::string string_at(const json& v, const std::string& path) {
    if (!v.is_string())
        fail(path, "expected a string");
    return v.get<std::string>();
}

} // namespace detail

// ---- reading ----------------------------------------------------------------

inline RateSpec rate_spec_from_json(const json& j, const std::string& path) {
    if (!j.is_object())
        detail::fail(path, "expected an object");
    const std::string kind = detail::string_at(detail::member(j, "kind", path), path + ".kind");
    RateSpec spec;
    if (kind == "mass_action") {
        detail::check_keys(j, {"kind", "k"}, path);
        spec.kind = RateKind::mass_action;
        spec.k = detail::number_at(detail::member(j, "k", path), path + ".k");
    } else if (kind == "saturating") {
        detail::check_keys(j, {"kind", "k", "a", "b"}, path);
        spec.kind = RateKind::saturating;
        spec.k = detail::number_at(detail::member(j, "k", path), path + ".k");
        spec.a = detail::number_at(detail::member(j, "a", path), path + ".a");
        spec.b = detail::number_at(detail::member(j, "b", path), path + ".b");
    } else {
        detail::fail(path + ".kind",
                     "unknown rate kind \"" + kind + "\" (expected \"mass_action\" or \"saturating\")");
    }
    validate_rate_spec(spec, path);
    return spec;
}

inline GraphSpec graph_spec_from_json(const json& j) {
    detail::check_keys(j, {"compartments", "edges"}, "$");
    const json& comps = detail::member(j, "compartments", "$");
    if (!comps.is_array() || comps.empty())
        detail::fail("$.compartments", "expected a non-empty array");
    GraphSpec spec;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string path = "$.compartments[" + std::to_string(i) + "]";
        const json& c = comps[i];
        detail::check_keys(c, {"name", "capacity"}, path);
        spec.capacities.push_back(
            detail::number_at(detail::member(c, "capacity", path), path + ".capacity"));
        if (auto it = c.find("name"); it != c.end())
            spec.labels.push_back(detail::string_at(*it, path + ".name"));
        else
            spec.labels.push_back("q" + std::to_string(i + 1));
    }
    const json& edges = detail::member(j, "edges", "$");
    if (!edges.is_array())
        detail::fail("$.edges", "expected an array");
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const std::string path = "$.edges[" + std::to_string(e) + "]";
        const json& ej = edges[e];
        detail::check_keys(ej, {"from", "to", "rate"}, path);
        GraphSpec::Edge edge;
        edge.from = detail::int_at(detail::member(ej, "from", path), path + ".from");
        edge.to = detail::int_at(detail::member(ej, "to", path), path + ".to");
        edge.rate = rate_spec_from_json(detail::member(ej, "rate", path), path + ".rate");
        spec.edges.push_back(std::move(edge));
    }
    return spec;
}

inline GraphSpec parse_graph_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    return graph_spec_from_json(j);
}

inline GraphSpec load_graph_spec(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw InputError("cannot open input file: " + file);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph_text(buf.str());
}

// ---- writing ----------------------------------------------------------------

inline json rate_spec_to_json(const RateSpec& spec) {
    json j;
    j["kind"] = rate_kind_name(spec.kind);
    if (spec.kind == RateKind::custom) {
        j["name"] = spec.name;
    } else {
        j["k"] = spec.k;
        if (spec.kind == RateKind::saturating) {
            j["a"] = spec.a;
            j["b"] = spec.b;
        }
    }
    return j;
}

inline json graph_to_json(const CompartmentalGraph& g) {
    json comps = json::array();
    for (int i = 0; i < g.size(); ++i)
        comps.push_back({{"name", g.labels()[i]}, {"capacity", g.capacities()[i]}});
    json edges = json::array();
    for (const auto& e : g.edges())
        edges.push_back({{"from", e.from + 1}, {"to", e.to + 1}, {"rate", rate_spec_to_json(e.rate)}});
    return json{{"compartments", comps}, {"edges", edges}};
}

inline json rational_to_json(const Rational& q) {
    return json{{"num", numerator(q).str()}, {"den", denominator(q).str()}};
}

inline json certificate_to_json(const ConservedQuantity& cq,
                                const std::vector<std::string>& species) {
    json coeff = json::array();
    for (const auto& c : cq.c)
        coeff.push_back(rational_to_json(c));
    json support = json::array();
    for (int j : cq.support)
        support.push_back(species[j]);
    return json{{"coefficients", coeff}, {"support", support}};
}

inline json siphons_to_json(const PetriNet& net, const std::vector<std::vector<int>>& siphons,
                            const std::string& method) {
    json list = json::array();
    for (const auto& s : siphons) {
        json names = json::array();
        for (int p : s)
            names.push_back(net.place_names[p]);
        list.push_back(names);
    }
    return json{{"minimal_siphons", list}, {"method", method}};
}

inline json persistence_to_json(const PersistenceVerdict& v, const Crn& crn) {
    json j;
    j["verdict"] = verdict_name(v.verdict);
    j["method"] = method_name(v.method);
    if (!v.note.empty())
        j["note"] = v.note;
    j["global_certificate"] = v.global_certificate
                                  ? certificate_to_json(*v.global_certificate, crn.species_names())
                                  : json(nullptr);
    json sc = json::array();
    for (const auto& [siphon, cert] : v.siphon_certificates) {
        json names = json::array();
        for (int p : siphon)
            names.push_back(crn.species_names()[p]);
        sc.push_back({{"siphon", names}, {"certificate", certificate_to_json(cert, crn.species_names())}});
    }
    j["siphon_certificates"] = sc;
    return j;
}

inline json crn_to_json(const Crn& crn) {
    json species = json::array();
    for (const auto& name : crn.species_names())
        species.push_back(name);
    json reactions = json::array();
    for (const auto& r : crn.reactions()) {
        json rj;
        rj["reactants"] = r.y;
        rj["products"] = r.yp;
        if (const TransitionRate* tr = r.rate.transition_rate())
            rj["rate"] = rate_spec_to_json(tr->spec());
        else
            rj["rate"] = json{{"kind", "mass_action"}, {"k", r.rate.mass_action_k()}};
        reactions.push_back(rj);
    }
    return json{{"species", species}, {"reactions", reactions}};
}

inline json equilibrium_to_json(const EquilibriumResult& r) {
    return json{{"level", r.s},
                {"equilibrium", r.e},
                {"residual_inf", r.residual_inf},
                {"newton_iterations", r.newton_iterations},
                {"settle_time", r.settle_time}};
}

namespace detail {
inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
} // namespace detail

inline json verification_to_json(const VerificationSummary& s) {
    json j;
    j["overall_pass"] = s.overall_pass;
    j["equilibrium"] = {{"pass", s.equilibrium.pass},
                        {"levels", s.equilibrium.levels},
                        {"starts_per_level", s.equilibrium.starts_per_level},
                        {"max_spread", s.equilibrium.max_spread},
                        {"max_residual", s.equilibrium.max_residual},
                        {"max_level_error", s.equilibrium.max_level_error}};
    j["jacobian"] = {{"pass", s.jacobian.pass},
                     {"samples", s.jacobian.samples},
                     {"max_fd_rel_error", s.jacobian.max_fd_rel_error},
                     {"max_col_sum", s.jacobian.max_col_sum},
                     {"max_sign_violation", s.jacobian.max_sign_violation},
                     {"max_abs_mu1", s.jacobian.max_abs_mu1}};
    j["monotonicity"] = {{"pass", s.monotonicity.pass},
                         {"pairs", s.monotonicity.pairs},
                         {"violations", s.monotonicity.violations},
                         {"max_weak_violation", s.monotonicity.max_weak_violation},
                         {"min_strict_gap", detail::finite_or_null(s.monotonicity.min_strict_gap)}};
    j["contraction"] = {{"pass", s.contraction.pass},
                        {"pairs", s.contraction.pairs},
                        {"violations", s.contraction.violations},
                        {"max_step_increase", s.contraction.max_step_increase},
                        {"max_excess_over_initial", s.contraction.max_excess_over_initial},
                        {"max_abs_mu1", s.contraction.max_abs_mu1}};
    j["boundary"] = {{"pass", s.boundary.pass},
                     {"grid_per_axis", s.boundary.grid_per_axis},
                     {"boundary_samples", s.boundary.boundary_samples},
                     {"min_noncorner_rhs", detail::finite_or_null(s.boundary.min_noncorner_rhs)},
                     {"max_corner_rhs", s.boundary.max_corner_rhs},
                     {"violations", s.boundary.violations}};
    j["persistence_evidence"] = {
        {"pass", s.persistence.pass},
        {"trials", s.persistence.trials},
        {"min_tail_floor", detail::finite_or_null(s.persistence.min_tail_floor)},
        {"near_boundary_increasing", s.persistence.near_boundary_increasing},
        {"near_boundary_final_floor", s.persistence.near_boundary_final_floor}};
    return j;
}

/// CSV with header "t,n1,...,nm,I"; values use %.17g so round-trips are exact.
inline std::string trajectory_to_csv(const Trajectory& traj, int dim) {
    std::string out = "t";
    for (int i = 1; i <= dim; ++i)
        out += ",n" + std::to_string(i);
    out += ",I\n";
    char buf[32];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
        out += sep;
    };
    for (std::size_t k = 0; k < traj.t.size(); ++k) {
        put(traj.t[k], ',');
        double level = 0.0;
        for (int i = 0; i < dim; ++i) {
            level += traj.x[k][i];
            put(traj.x[k][i], ',');
        }
        put(level, '\n');
    }
    return out;
}

inline std::string to_pretty(const json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open output file: " + path);
    out << content;
    if (!out)
        throw Error("failed writing output file: " + path);
}

} // namespace capkin::io

#endif
