#ifndef CAPKIN_PERSISTENCE_HPP
#define CAPKIN_PERSISTENCE_HPP

#include "capkin/conservation.hpp"
#include "capkin/crn.hpp"
#include "capkin/graph.hpp"
#include "capkin/petri.hpp"
#include "capkin/tolerances.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace capkin {

/// Outcome of a persistence check. The test is sufficient only, so a
/// negative outcome is "inconclusive", never a disproof.
struct PersistenceVerdict {
    enum class Verdict { persistent_certified, inconclusive };
    enum class Method { structural_corollary, theorem1_general };

    Verdict verdict = Verdict::inconclusive;
    Method method = Method::theorem1_general;
    /// Strictly positive conserved quantity (condition (1)), when certified.
    std::optional<ConservedQuantity> global_certificate;
    /// One certificate per minimal siphon (condition (2)): a nonnegative,
    /// nonzero conserved quantity supported inside the siphon.
    std::vector<std::pair<std::vector<int>, ConservedQuantity>> siphon_certificates;
    std::string note;
};

inline const char* verdict_name(PersistenceVerdict::Verdict v) {
    return v == PersistenceVerdict::Verdict::persistent_certified ? "persistent_certified"
                                                                  : "inconclusive";
}
inline const char* method_name(PersistenceVerdict::Method m) {
    return m == PersistenceVerdict::Method::structural_corollary ? "structural_corollary"
                                                                 : "theorem1_general";
}

namespace detail {

/// Independent re-check of a certificate: exact conservation, nonnegative
/// and nonzero entries, strict positivity when required, and support
/// containment when a containing set is given.
inline bool certificate_valid(const Crn& crn, const ConservedQuantity& q, bool require_strict,
                              const std::vector<int>* within) {
    if (static_cast<int>(q.c.size()) != crn.species_count())
        return false;
    bool nonzero = false;
    for (const auto& v : q.c) {
        if (v < 0)
            return false;
        if (v > 0)
            nonzero = true;
        if (require_strict && v <= 0)
            return false;
    }
    if (!nonzero)
        return false;
    if (!is_conserved(crn, q.c))
        return false;
    if (within) {
        for (int j = 0; j < crn.species_count(); ++j) {
            if (q.c[j] > 0 && std::find(within->begin(), within->end(), j) == within->end())
                return false;
        }
    }
    return true;
}

inline ConservedQuantity indicator_quantity(int M, const std::vector<int>& support) {
    ConservedQuantity q;
    q.c.assign(M, Rational(0));
    for (int j : support)
        q.c[j] = 1;
    q.support = support;
    return q;
}

} // namespace detail

/// Structural check: a strongly connected compartmental graph is
/// persistent, certified by the closed-form siphon catalogue with
/// the classic certificates — total particles for {N_1..N_m}, total free
/// space for {S_1..S_m}, the capacity n_i + s_i for each pair {N_i, S_i},
/// and the all-species sum globally. Every certificate is re-verified
/// against the CRN in exact arithmetic rather than assumed.
inline PersistenceVerdict check_persistence_structural(const CompartmentalGraph& g,
                                                       const RateRegistry* registry = nullptr) {
    PersistenceVerdict out;
    out.method = PersistenceVerdict::Method::structural_corollary;
    if (!is_strongly_connected(g)) {
        out.verdict = PersistenceVerdict::Verdict::inconclusive;
        out.note = "the compartmental graph is not strongly connected; the structural "
                   "criterion is one-directional and does not apply";
        return out;
    }
    const Crn crn = compartmental_crn(g, registry);
    const int m = g.size(), M = 2 * m;

    std::vector<int> all(M);
    for (int j = 0; j < M; ++j)
        all[j] = j;
    ConservedQuantity global = detail::indicator_quantity(M, all);
    if (!detail::certificate_valid(crn, global, /*require_strict=*/true, nullptr)) {
        out.note = "internal certificate re-check failed for the all-species sum";
        return out;
    }
    out.global_certificate = std::move(global);

    for (const auto& sigma : closed_form_siphons(g)) {
        // {N...} -> sum of particles, {S...} -> sum of space, {N_i,S_i} -> capacity.
        ConservedQuantity cert = detail::indicator_quantity(M, sigma);
        if (!detail::certificate_valid(crn, cert, /*require_strict=*/false, &sigma)) {
            out.global_certificate.reset();
            out.siphon_certificates.clear();
            out.note = "internal certificate re-check failed for a closed-form siphon";
            return out;
        }
        out.siphon_certificates.push_back({sigma, std::move(cert)});
    }
    out.verdict = PersistenceVerdict::Verdict::persistent_certified;
    return out;
}

/// General siphon/conservation check on an arbitrary CRN. Persistence is
/// certified only when both conditions hold: (1) a strictly positive
/// conserved quantity exists, and (2) every minimal siphon supports a
/// nonnegative, nonzero conserved quantity. Checking
/// minimal siphons suffices: every siphon contains a minimal one and
/// inherits its certificate support. Both searches are exact-rational LP
/// decisions, and each certificate is independently re-verified.
inline PersistenceVerdict check_persistence_theorem1(const Crn& crn,
                                                     int place_cap = tol::place_cap) {
    PersistenceVerdict out;
    out.method = PersistenceVerdict::Method::theorem1_general;

    auto global = strictly_positive_conserved(crn);
    if (!global) {
        out.note = "no strictly positive conserved quantity exists (condition (1) fails to hold)";
        return out;
    }
    if (!detail::certificate_valid(crn, *global, /*require_strict=*/true, nullptr)) {
        out.note = "internal certificate re-check failed for condition (1)";
        return out;
    }

    const auto siphons = minimal_siphons(build_petri(crn), place_cap);
    std::vector<std::pair<std::vector<int>, ConservedQuantity>> certs;
    for (const auto& sigma : siphons) {
        auto cert = positive_conserved_on_support(crn, sigma);
        if (!cert || !detail::certificate_valid(crn, *cert, /*require_strict=*/false, &sigma)) {
            std::string names;
            for (int j : sigma)
                names += (names.empty() ? "" : ", ") + crn.species_names()[j];
            out.note = "minimal siphon {" + names + "} supports no nonnegative nonzero "
                       "conserved quantity (condition (2) fails to hold there)";
            return out;
        }
        certs.push_back({sigma, std::move(*cert)});
    }
    out.verdict = PersistenceVerdict::Verdict::persistent_certified;
    out.global_certificate = std::move(*global);
    out.siphon_certificates = std::move(certs);
    return out;
}

} // namespace capkin

#endif
