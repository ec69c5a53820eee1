#ifndef PROVAUTH_ENGINE_HPP
#define PROVAUTH_ENGINE_HPP

/*
 * Forward-chaining saturation of a policy base into a provenance-annotated
 * closure. Facts are ground belief formulas, "i says psi" or
 * "not i says psi". Each fact carries an antichain of minimal provenance
 * sets: the trustees whose delegations a derivation passed through, with
 * the empty set denoting the owner's (or issuer's) first-hand assertion.
 *
 * Derivation rules, applied to a fixpoint:
 *
 *   R1  every credential yields its fact with provenance {};
 *       "due {AE} i says psi" yields (i says psi, AE)
 *   R2  from "i trusts j on phi" and (j says phi@s, P) derive
 *       (i says phi@s, P + {j})
 *   R3  from (j says psi, P) derive (j says j says psi, P)
 *   R4  from (not j says psi, P) derive (j says not j says psi, P)
 *   R5  a rule fires when every body conjunct matches; the head instance
 *       gets the union of the matched provenance sets
 *
 * R3/R4 respect the configured modal depth bound. Negative facts are never
 * derived: the only negative conclusions are stated credentials. Opposing
 * facts are reported as conflicts but stay usable by further derivations.
 */

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "provauth/config.hpp"
#include "provauth/core.hpp"
#include "provauth/proof.hpp"
#include "provauth/statement.hpp"

namespace provauth {

struct RoundsExceeded : std::runtime_error {
    explicit RoundsExceeded(int rounds)
        : std::runtime_error("saturation did not reach a fixpoint within " +
                             std::to_string(rounds) + " rounds") {}
};

struct DerivedFact {
    Formula belief;
    AgentSet provenance;
    ProofTree proof;
};

enum class ConflictKind { Belief, Assertion };

inline const char* conflict_kind_name(ConflictKind k) {
    return k == ConflictKind::Belief ? "belief-conflict" : "assertion-conflict";
}

/// A single agent's opposing facts, derived through an identical
/// provenance. For belief conflicts the formula is the positive core psi
/// of the opposing pair (i says psi / i says not psi); for assertion
/// conflicts it is the shared body of (i says psi / not i says psi).
struct Conflict {
    Agent agent;
    Formula formula;
    ConflictKind kind;

    friend bool operator==(const Conflict& a, const Conflict& b) {
        return a.agent == b.agent && a.kind == b.kind && a.formula == b.formula;
    }
    friend bool operator<(const Conflict& a, const Conflict& b) {
        if (a.agent != b.agent) return a.agent < b.agent;
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        return a.formula < b.formula;
    }
};

struct ProvEntry {
    AgentSet provenance;
    ProofTree proof;
};

/// Fixpoint result: every derivable belief mapped to its antichain of
/// minimal provenance sets, one proof witness per set.
class Closure {
public:
    using FactMap = std::map<Formula, std::vector<ProvEntry>>;

    const FactMap& facts() const { return facts_; }
    const std::vector<Conflict>& conflicts() const { return conflicts_; }

    const std::vector<ProvEntry>* find(const Formula& belief) const {
        auto it = facts_.find(belief);
        return it == facts_.end() ? nullptr : &it->second;
    }

    std::size_t fact_count() const { return facts_.size(); }

    /// Inserts a derivation, keeping each fact's provenance family an
    /// antichain. Returns false when an equal-or-smaller set is already
    /// stored (the first witness for a set is kept).
    bool insert(const Formula& belief, const AgentSet& provenance, ProofTree proof) {
        auto& entries = facts_[belief];
        for (const ProvEntry& e : entries)
            if (e.provenance.subset_of(provenance)) return false;
        std::erase_if(entries, [&](const ProvEntry& e) { return provenance.subset_of(e.provenance); });
        entries.push_back(ProvEntry{provenance, std::move(proof)});
        return true;
    }

    void set_conflicts(std::vector<Conflict> conflicts) { conflicts_ = std::move(conflicts); }

private:
    FactMap facts_;
    std::vector<Conflict> conflicts_;
};

namespace detail {

/// One-sided unification: extends sub so that pattern@sub == ground.
/// Only term positions may vary; agents and predicates are literal.
inline bool match_formula(const Formula& pattern, const Formula& ground, Substitution& sub) {
    if (pattern.kind() != ground.kind()) return false;
    switch (pattern.kind()) {
        case Formula::Kind::Atom: {
            const Atom& p = pattern.as_atom();
            const Atom& g = ground.as_atom();
            if (p.predicate != g.predicate || p.args.size() != g.args.size()) return false;
            for (std::size_t i = 0; i < p.args.size(); ++i) {
                const Term& pt = p.args[i];
                const Term& gt = g.args[i];
                if (pt.is_variable()) {
                    if (const Term* bound = sub.lookup(pt.name)) {
                        if (*bound != gt) return false;
                    } else {
                        if (gt.is_variable()) return false;
                        sub.bind(pt.name, gt);
                    }
                } else if (pt != gt) {
                    return false;
                }
            }
            return true;
        }
        case Formula::Kind::Not:
            return match_formula(pattern.body(), ground.body(), sub);
        case Formula::Kind::And:
        case Formula::Kind::Implies:
            return match_formula(pattern.lhs(), ground.lhs(), sub) &&
                   match_formula(pattern.rhs(), ground.rhs(), sub);
        case Formula::Kind::Believes:
            return pattern.agent() == ground.agent() &&
                   match_formula(pattern.body(), ground.body(), sub);
        case Formula::Kind::Due:
            return pattern.agents() == ground.agents() &&
                   match_formula(pattern.body(), ground.body(), sub);
        case Formula::Kind::Trusts:
            return pattern.truster() == ground.truster() &&
                   pattern.trustee() == ground.trustee() &&
                   match_formula(pattern.body(), ground.body(), sub);
    }
    return false;
}

} // namespace detail

struct AtomMatch {
    Substitution subst;
    AgentSet provenance;
    const ProofTree* proof;  // witness stored in the closure
};

/// Matches one rule-body conjunct against the facts stored so far, under a
/// partial substitution. Belief atoms ignore provenance; negative belief
/// atoms match explicitly stated negative facts only, never absence; due
/// guards admit facts whose provenance is a subset of the guard set.
inline std::vector<AtomMatch> match_atom(const BodyAtom& atom, const Substitution& sub,
                                         const Closure& closure) {
    std::vector<AtomMatch> out;
    const BeliefAtom* belief = std::get_if<BeliefAtom>(&atom);
    const GuardedAtom* guard = std::get_if<GuardedAtom>(&atom);
    if (guard && !guard->is_belief()) return out;  // inert guard: matches nothing

    const bool want_positive = belief ? belief->positive : true;
    const Agent& agent = belief ? belief->agent : guard->agent();
    const Formula pattern = apply_subst(belief ? belief->body : guard->body(), sub);

    for (const auto& [fact, entries] : closure.facts()) {
        auto bf = as_belief_fact(fact);
        if (!bf || bf->positive != want_positive || bf->agent != agent) continue;
        Substitution extended = sub;
        if (!detail::match_formula(pattern, bf->body, extended)) continue;
        for (const ProvEntry& e : entries) {
            if (guard && !e.provenance.subset_of(guard->guard)) continue;
            out.push_back(AtomMatch{extended, e.provenance, &e.proof});
        }
    }
    return out;
}

namespace detail {

struct RuleJoinState {
    Substitution subst;
    AgentSet provenance;
    std::vector<const ProofTree*> proofs;
};

struct PendingFact {
    Formula belief;
    AgentSet provenance;
    ProofTree proof;
};

inline void run_round(const PolicyBase& pb, const EngineConfig& cfg, const Closure& closure,
                      std::vector<PendingFact>& pending) {
    // R2: trust lifting along stored positive beliefs of the trustee.
    for (std::size_t idx = 0; idx < pb.statements.size(); ++idx) {
        const auto* trust = std::get_if<TrustStatement>(&pb.statements[idx].value);
        if (!trust) continue;
        for (const auto& [fact, entries] : closure.facts()) {
            auto bf = as_belief_fact(fact);
            if (!bf || !bf->positive || bf->agent != trust->trustee) continue;
            Substitution sub;
            if (!match_formula(trust->body, bf->body, sub)) continue;
            Formula conclusion = Formula::believes(trust->truster, bf->body);
            Formula premise_stmt = apply_subst(denormalize(pb.statements[idx]), sub);
            for (const ProvEntry& e : entries) {
                AgentSet prov = e.provenance.union_with(AgentSet::single(trust->trustee));
                ProofTree proof{conclusion, RuleTag::TrustLift, std::nullopt, prov,
                                {stated_leaf(premise_stmt, idx, {}), e.proof}};
                pending.push_back(PendingFact{conclusion, std::move(prov), std::move(proof)});
            }
        }
    }

    // R3/R4: introspection within the depth bound.
    for (const auto& [fact, entries] : closure.facts()) {
        if (modal_depth(fact) + 1 > cfg.depth_bound) continue;
        auto bf = as_belief_fact(fact);
        if (!bf) continue;
        Formula conclusion = Formula::believes(bf->agent, fact);
        RuleTag tag = bf->positive ? RuleTag::PositiveIntrospection : RuleTag::NegativeIntrospection;
        for (const ProvEntry& e : entries) {
            ProofTree proof{conclusion, tag, std::nullopt, e.provenance, {e.proof}};
            pending.push_back(PendingFact{conclusion, e.provenance, std::move(proof)});
        }
    }

    // R5: rule firing over all body-atom match combinations.
    for (std::size_t idx = 0; idx < pb.statements.size(); ++idx) {
        const auto* rule = std::get_if<Rule>(&pb.statements[idx].value);
        if (!rule) continue;
        std::vector<RuleJoinState> states{RuleJoinState{}};
        for (const BodyAtom& atom : rule->body) {
            std::vector<RuleJoinState> next;
            for (const RuleJoinState& st : states) {
                for (AtomMatch& m : match_atom(atom, st.subst, closure)) {
                    RuleJoinState ns;
                    ns.subst = std::move(m.subst);
                    ns.provenance = st.provenance.union_with(m.provenance);
                    ns.proofs = st.proofs;
                    ns.proofs.push_back(m.proof);
                    next.push_back(std::move(ns));
                }
            }
            states = std::move(next);
            if (states.empty()) break;
        }
        for (const RuleJoinState& st : states) {
            Formula head = apply_subst(head_formula(rule->head), st.subst);
            Formula premise_stmt = apply_subst(denormalize(pb.statements[idx]), st.subst);
            ProofTree proof{head, RuleTag::RuleFire, std::nullopt, st.provenance,
                            {stated_leaf(premise_stmt, idx, {})}};
            for (const ProofTree* p : st.proofs) proof.children.push_back(*p);
            pending.push_back(PendingFact{head, st.provenance, std::move(proof)});
        }
    }
}

inline bool share_provenance(const std::vector<ProvEntry>& xs, const std::vector<ProvEntry>& ys) {
    for (const ProvEntry& a : xs)
        for (const ProvEntry& b : ys)
            if (a.provenance == b.provenance) return true;
    return false;
}

inline std::vector<Conflict> find_conflicts(const Closure& closure) {
    std::vector<Conflict> out;
    for (const auto& [fact, entries] : closure.facts()) {
        auto bf = as_belief_fact(fact);
        if (!bf || !bf->positive) continue;

        // Belief conflict: i says psi vs i says not psi through an identical
        // provenance. Reported once per pair, keyed by the positive core;
        // opposing facts with distinct provenances are subjective divergence,
        // not a conflict.
        if (bf->body.kind() != Formula::Kind::Not) {
            Formula opposite = Formula::believes(bf->agent, negate_body(bf->body));
            const auto* other = closure.find(opposite);
            if (other && share_provenance(entries, *other))
                out.push_back(Conflict{bf->agent, bf->body, ConflictKind::Belief});
        }

        // Assertion conflict: i says psi vs not i says psi.
        const auto* denial = closure.find(Formula::negation(fact));
        if (denial && share_provenance(entries, *denial))
            out.push_back(Conflict{bf->agent, bf->body, ConflictKind::Assertion});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace detail

/// Computes the least fixpoint of R1-R5 over ground instances, then scans
/// for conflicts. Rounds are breadth-first: each round derives from the
/// closure as it stood at the round's start, so the result is independent
/// of statement order.
inline Closure saturate(const PolicyBase& pb, const EngineConfig& cfg = {}) {
    if (cfg.depth_bound < 1) throw std::invalid_argument("depth_bound must be >= 1");
    Closure closure;

    // R1: assertions.
    for (std::size_t idx = 0; idx < pb.statements.size(); ++idx) {
        const Statement& st = pb.statements[idx];
        if (const auto* c = std::get_if<Credential>(&st.value)) {
            Formula fact = make_belief_fact(c->positive, c->agent, c->body);
            closure.insert(fact, {}, stated_leaf(fact, idx, {}));
        } else if (const auto* d = std::get_if<StatedProvenance>(&st.value)) {
            if (!d->is_belief()) continue;  // inert: no derivation reads it
            closure.insert(d->inner, d->agents, stated_leaf(d->inner, idx, d->agents));
        }
    }

    for (int round = 0;; ++round) {
        if (round >= cfg.max_rounds) throw RoundsExceeded(cfg.max_rounds);
        std::vector<detail::PendingFact> pending;
        detail::run_round(pb, cfg, closure, pending);
        bool changed = false;
        for (detail::PendingFact& f : pending)
            changed |= closure.insert(f.belief, f.provenance, std::move(f.proof));
        if (!changed) break;
    }

    closure.set_conflicts(detail::find_conflicts(closure));
    return closure;
}

/// The conflicts recorded while saturating, deduplicated and ordered.
inline std::vector<Conflict> detect_conflicts(const Closure& closure) {
    return closure.conflicts();
}

} // namespace provauth

#endif // PROVAUTH_ENGINE_HPP
