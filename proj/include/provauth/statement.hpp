#ifndef PROVAUTH_STATEMENT_HPP
#define PROVAUTH_STATEMENT_HPP

/*
 * Normalized policy-base entries and the classifier that maps top-level
 * formulas onto them. Four statement shapes are admitted:
 *
 *   Credential        (not)? i says psi
 *   TrustStatement    i trusts j on phi
 *   Rule              a1 and ... and an => owner says (not)? p(...)
 *   StatedProvenance  due {AE} i says psi
 *
 * Rule heads must be beliefs of the policy-base owner: the owner may base
 * its own conclusions on others' statements, but no rule can conclude
 * another agent's belief (and no rule can conclude a negated belief).
 */

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "provauth/config.hpp"
#include "provauth/core.hpp"
#include "provauth/diagnostics.hpp"
#include "provauth/pretty.hpp"

namespace provauth {

struct Credential {
    bool positive = true;  // false encodes "not i says psi"
    Agent agent;
    Formula body;
};

struct TrustStatement {
    Agent truster;  // the agent placing trust
    Agent trustee;  // the agent trusted on the body
    Formula body;
};

/// Rule-body conjunct "(not)? i says psi": matches stored belief facts of
/// the same sign, with no constraint on their provenance.
struct BeliefAtom {
    Agent agent;
    bool positive = true;
    Formula body;
};

/// Rule-body conjunct "due {AE} inner". When inner is "i says psi" this is
/// a provenance guard: it matches stored facts B_i psi whose provenance is
/// a subset of AE. Any other inner shape is legal surface syntax but
/// matches nothing (validate warns).
struct GuardedAtom {
    AgentSet guard;
    Formula inner;

    bool is_belief() const { return inner.kind() == Formula::Kind::Believes; }
    const Agent& agent() const { return inner.agent(); }
    const Formula& body() const { return inner.body(); }
};

using BodyAtom = std::variant<BeliefAtom, GuardedAtom>;

/// Rule head: the owner's belief in a literal, "owner says (not)? p(...)".
struct HeadAtom {
    Agent agent;
    bool positive = true;  // sign of the literal under the belief
    Atom atom;
};

struct Rule {
    std::vector<BodyAtom> body;
    HeadAtom head;
};

/// Top-level "due {AE} inner". With inner = "i says psi" it directly
/// asserts the fact B_i psi with provenance AE. Other inner shapes are
/// inert (validate warns).
struct StatedProvenance {
    AgentSet agents;
    Formula inner;

    bool is_belief() const { return inner.kind() == Formula::Kind::Believes; }
    const Agent& agent() const { return inner.agent(); }
    const Formula& body() const { return inner.body(); }
};

struct Statement {
    std::variant<Credential, TrustStatement, Rule, StatedProvenance> value;
    SourcePos pos;

    template <typename T> bool is() const { return std::holds_alternative<T>(value); }
    template <typename T> const T& as() const { return std::get<T>(value); }
};

struct PolicyBase {
    Agent owner;
    AgentSet registry;
    std::vector<Statement> statements;
};

// ---- formula views of statements ----------------------------------------

inline Formula body_atom_formula(const BodyAtom& a) {
    if (const auto* b = std::get_if<BeliefAtom>(&a))
        return make_belief_fact(b->positive, b->agent, b->body);
    const auto& g = std::get<GuardedAtom>(a);
    return Formula::due(g.guard, g.inner);
}

inline Formula head_formula(const HeadAtom& h) {
    Formula lit = Formula::atom(h.atom);
    if (!h.positive) lit = Formula::negation(lit);
    return Formula::believes(h.agent, lit);
}

/// Rebuilds the surface formula a statement was normalized from. The rule
/// body folds left over And, matching how the parser associates "and".
inline Formula denormalize(const Statement& st) {
    if (const auto* c = std::get_if<Credential>(&st.value))
        return make_belief_fact(c->positive, c->agent, c->body);
    if (const auto* t = std::get_if<TrustStatement>(&st.value))
        return Formula::trusts(t->truster, t->trustee, t->body);
    if (const auto* d = std::get_if<StatedProvenance>(&st.value))
        return Formula::due(d->agents, d->inner);
    const auto& r = std::get<Rule>(st.value);
    Formula body = body_atom_formula(r.body.front());
    for (std::size_t i = 1; i < r.body.size(); ++i)
        body = Formula::conjunction(body, body_atom_formula(r.body[i]));
    return Formula::implication(body, head_formula(r.head));
}

// ---- normalization -------------------------------------------------------

struct NormalizeResult {
    std::optional<Statement> statement;
    std::optional<Diagnostic> error;

    bool ok() const { return statement.has_value(); }
};

namespace detail {

inline NormalizeResult normalize_fail(DiagCode code, std::string message) {
    return {std::nullopt, Diagnostic{Severity::Error, code, std::move(message), {}}};
}

inline std::optional<Diagnostic> check_body(const Formula& f, const char* where, int max_depth) {
    if (!is_belief_body(f))
        return Diagnostic{Severity::Error, DiagCode::NotInFragment,
                          std::string(where) + " must be an atom or a (negated) belief chain, got: " +
                              pretty(f),
                          {}};
    if (modal_depth(f) > max_depth)
        return Diagnostic{Severity::Error, DiagCode::DepthExceeded,
                          std::string(where) + " exceeds the modal depth bound: " + pretty(f),
                          {}};
    return std::nullopt;
}

inline std::optional<BodyAtom> classify_body_conjunct(const Formula& f, int depth_bound,
                                                      std::optional<Diagnostic>& err) {
    if (f.kind() == Formula::Kind::Believes) {
        if (auto d = check_body(f.body(), "belief body", depth_bound - 1)) { err = d; return std::nullopt; }
        return BodyAtom{BeliefAtom{f.agent(), true, f.body()}};
    }
    if (f.kind() == Formula::Kind::Not && f.body().kind() == Formula::Kind::Believes) {
        const Formula& b = f.body();
        if (auto d = check_body(b.body(), "belief body", depth_bound - 1)) { err = d; return std::nullopt; }
        return BodyAtom{BeliefAtom{b.agent(), false, b.body()}};
    }
    if (f.kind() == Formula::Kind::Due) {
        const Formula& inner = f.body();
        // The guarded shape is "due {AE} i says psi"; other inner shapes in
        // the fragment are kept but never match (validate warns).
        if (inner.kind() == Formula::Kind::Believes) {
            if (auto d = check_body(inner.body(), "guarded belief body", depth_bound - 1)) {
                err = d;
                return std::nullopt;
            }
        } else if (auto d = check_body(inner, "guard body", depth_bound)) {
            err = d;
            return std::nullopt;
        }
        return BodyAtom{GuardedAtom{f.agents(), inner}};
    }
    err = Diagnostic{Severity::Error, DiagCode::NotInFragment,
                     "rule-body conjunct must be a (negated) belief or a due-guarded belief, got: " +
                         pretty(f),
                     {}};
    return std::nullopt;
}

} // namespace detail

/// Classifies a top-level policy formula as one of the four statement
/// shapes, or rejects it with a diagnostic naming the offending subterm.
inline NormalizeResult normalize(const Formula& f, const Agent& owner,
                                 int depth_bound = kDefaultDepthBound) {
    using detail::normalize_fail;
    switch (f.kind()) {
        case Formula::Kind::Believes: {
            if (auto d = detail::check_body(f.body(), "credential body", depth_bound - 1))
                return {std::nullopt, d};
            return {Statement{Credential{true, f.agent(), f.body()}, {}}, std::nullopt};
        }
        case Formula::Kind::Not: {
            const Formula& b = f.body();
            if (b.kind() != Formula::Kind::Believes)
                return normalize_fail(DiagCode::NotInFragment,
                                      "negation at statement level must apply to a belief, got: " +
                                          pretty(f));
            if (auto d = detail::check_body(b.body(), "credential body", depth_bound - 1))
                return {std::nullopt, d};
            return {Statement{Credential{false, b.agent(), b.body()}, {}}, std::nullopt};
        }
        case Formula::Kind::Trusts: {
            if (auto d = detail::check_body(f.body(), "trust body", depth_bound - 1))
                return {std::nullopt, d};
            return {Statement{TrustStatement{f.truster(), f.trustee(), f.body()}, {}}, std::nullopt};
        }
        case Formula::Kind::Due: {
            const Formula& inner = f.body();
            if (inner.kind() == Formula::Kind::Believes) {
                if (auto d = detail::check_body(inner.body(), "stated-provenance body", depth_bound - 1))
                    return {std::nullopt, d};
            } else if (auto d = detail::check_body(inner, "due body", depth_bound)) {
                return {std::nullopt, d};
            }
            return {Statement{StatedProvenance{f.agents(), inner}, {}}, std::nullopt};
        }
        case Formula::Kind::Implies: {
            // Flatten the left side over And into body conjuncts.
            std::vector<Formula> conjuncts;
            std::vector<Formula> stack{f.lhs()};
            while (!stack.empty()) {
                Formula g = stack.back();
                stack.pop_back();
                if (g.kind() == Formula::Kind::And) {
                    stack.push_back(g.rhs());
                    stack.push_back(g.lhs());
                } else {
                    conjuncts.push_back(g);
                }
            }
            Rule rule;
            for (const Formula& c : conjuncts) {
                std::optional<Diagnostic> err;
                auto atom = detail::classify_body_conjunct(c, depth_bound, err);
                if (!atom) return {std::nullopt, err};
                rule.body.push_back(std::move(*atom));
            }
            const Formula& head = f.rhs();
            if (head.kind() != Formula::Kind::Believes)
                return normalize_fail(DiagCode::NotInFragment,
                                      "rule head must be a belief of the owner, got: " +
                                          pretty(head));
            if (head.agent() != owner)
                return normalize_fail(DiagCode::NotInFragment,
                                      "rule head must be a belief of the owner '" + owner +
                                          "', got a belief of '" + head.agent() + "'");
            const Formula& lit = head.body();
            if (lit.kind() == Formula::Kind::Atom) {
                rule.head = HeadAtom{head.agent(), true, lit.as_atom()};
            } else if (lit.kind() == Formula::Kind::Not &&
                       lit.body().kind() == Formula::Kind::Atom) {
                rule.head = HeadAtom{head.agent(), false, lit.body().as_atom()};
            } else {
                return normalize_fail(DiagCode::NotInFragment,
                                      "rule head must be an owner belief in a literal, got: " +
                                          pretty(lit));
            }
            // Safety / range restriction: head variables must occur in the body.
            std::set<std::string> body_vars;
            for (const BodyAtom& a : rule.body) collect_free_vars(body_atom_formula(a), body_vars);
            for (const Term& t : rule.head.atom.args)
                if (t.is_variable() && !body_vars.count(t.name))
                    return normalize_fail(DiagCode::UnsafeRule,
                                          "head variable '" + t.name + "' does not occur in the rule body");
            return {Statement{std::move(rule), {}}, std::nullopt};
        }
        case Formula::Kind::And:
            return normalize_fail(DiagCode::NotInFragment,
                                  "conjunction is not a statement; write the conjuncts as separate statements");
        case Formula::Kind::Atom:
            return normalize_fail(DiagCode::NotInFragment,
                                  "a bare atom is not a statement; did you mean '" + owner + " says " +
                                      pretty(f) + "'?");
    }
    return normalize_fail(DiagCode::NotInFragment, "unrecognized statement shape");
}

} // namespace provauth

#endif // PROVAUTH_STATEMENT_HPP
