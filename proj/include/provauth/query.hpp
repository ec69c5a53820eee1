#ifndef PROVAUTH_QUERY_HPP
#define PROVAUTH_QUERY_HPP

/*
 * Query answering over a saturated closure. Two query shapes are
 * supported:
 *
 *   (not)? i says psi        -- does the fact hold, through any provenance?
 *   due {AE} i says psi      -- does it hold through some provenance
 *                               within AE?
 *
 * Queries may contain variables; every grounding found in the closure is
 * enumerated as a separate answer.
 */

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "provauth/core.hpp"
#include "provauth/engine.hpp"
#include "provauth/pretty.hpp"

namespace provauth {

struct UnsupportedQueryShape : std::invalid_argument {
    explicit UnsupportedQueryShape(const Formula& q)
        : std::invalid_argument("unsupported query shape: " + pretty(q) +
                                " (expected \"[not] <agent> says <formula>\" or "
                                "\"due {...} <agent> says <formula>\")") {}
};

struct Answer {
    Substitution subst;
    AgentSet provenance;
    ProofTree proof;
};

struct QueryResult {
    bool holds = false;
    std::vector<Answer> answers;
    std::vector<AgentSet> provenances;  // antichain over the answers
};

namespace detail {

inline void sort_answers(std::vector<Answer>& answers) {
    std::sort(answers.begin(), answers.end(), [](const Answer& a, const Answer& b) {
        if (a.subst != b.subst) return a.subst < b.subst;
        return a.provenance < b.provenance;
    });
}

inline std::vector<AgentSet> minimize_family(std::vector<AgentSet> sets) {
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<AgentSet> out;
    for (const AgentSet& s : sets) {
        bool dominated = false;
        for (const AgentSet& t : sets)
            if (t != s && t.subset_of(s)) { dominated = true; break; }
        if (!dominated) out.push_back(s);
    }
    return out;
}

inline void finish(QueryResult& r) {
    sort_answers(r.answers);
    std::vector<AgentSet> sets;
    sets.reserve(r.answers.size());
    for (const Answer& a : r.answers) sets.push_back(a.provenance);
    r.provenances = minimize_family(std::move(sets));
    r.holds = !r.answers.empty();
}

/// Enumerates stored facts matching a (possibly variable-bearing) signed
/// belief pattern, optionally restricted to provenances within a guard.
inline void enumerate(const Closure& closure, bool positive, const Agent& agent,
                      const Formula& body_pattern, const AgentSet* within, QueryResult& r) {
    for (const auto& [fact, entries] : closure.facts()) {
        auto bf = as_belief_fact(fact);
        if (!bf || bf->positive != positive || bf->agent != agent) continue;
        Substitution sub;
        if (!match_formula(body_pattern, bf->body, sub)) continue;
        for (const ProvEntry& e : entries) {
            if (within && !e.provenance.subset_of(*within)) continue;
            r.answers.push_back(Answer{sub, e.provenance, e.proof});
        }
    }
}

} // namespace detail

/// Answers a query against the closure. Throws UnsupportedQueryShape for
/// formulas outside the two supported shapes.
inline QueryResult holds(const Closure& closure, const Formula& query) {
    QueryResult r;
    if (auto bf = as_belief_fact(query)) {
        detail::enumerate(closure, bf->positive, bf->agent, bf->body, nullptr, r);
        detail::finish(r);
        return r;
    }
    if (query.kind() == Formula::Kind::Due && query.body().kind() == Formula::Kind::Believes) {
        const Formula& inner = query.body();
        const AgentSet& guard = query.agents();
        detail::enumerate(closure, true, inner.agent(), inner.body(), &guard, r);
        detail::finish(r);
        return r;
    }
    throw UnsupportedQueryShape(query);
}

/// The stored antichain of minimal provenance sets for a ground belief;
/// empty when the belief was never derived.
inline std::vector<AgentSet> minimal_provenances(const Closure& closure, const Formula& belief) {
    const auto* entries = closure.find(belief);
    if (!entries) return {};
    std::vector<AgentSet> out;
    out.reserve(entries->size());
    for (const ProvEntry& e : *entries) out.push_back(e.provenance);
    std::sort(out.begin(), out.end());
    return out;
}

/// Constrained query: holds iff some stored provenance avoids must_exclude
/// entirely and, when bounded, stays within must_within.
inline QueryResult holds_constrained(const Closure& closure, const Formula& belief,
                                     const AgentSet& must_exclude,
                                     const std::optional<AgentSet>& must_within = std::nullopt) {
    auto bf = as_belief_fact(belief);
    if (!bf) throw UnsupportedQueryShape(belief);
    QueryResult r;
    detail::enumerate(closure, bf->positive, bf->agent, bf->body, nullptr, r);
    std::erase_if(r.answers, [&](const Answer& a) {
        if (a.provenance.intersects(must_exclude)) return true;
        if (must_within && !a.provenance.subset_of(*must_within)) return true;
        return false;
    });
    detail::finish(r);
    return r;
}

} // namespace provauth

#endif // PROVAUTH_QUERY_HPP
