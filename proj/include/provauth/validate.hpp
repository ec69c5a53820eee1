#ifndef PROVAUTH_VALIDATE_HPP
#define PROVAUTH_VALIDATE_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "provauth/config.hpp"
#include "provauth/core.hpp"
#include "provauth/pretty.hpp"
#include "provauth/statement.hpp"

namespace provauth {

namespace detail {

inline void collect_agents(const Formula& f, std::set<Agent>& out) {
    switch (f.kind()) {
        case Formula::Kind::Atom: return;
        case Formula::Kind::Not:
            collect_agents(f.body(), out);
            return;
        case Formula::Kind::And:
        case Formula::Kind::Implies:
            collect_agents(f.lhs(), out);
            collect_agents(f.rhs(), out);
            return;
        case Formula::Kind::Believes:
            out.insert(f.agent());
            collect_agents(f.body(), out);
            return;
        case Formula::Kind::Due:
            for (const Agent& a : f.agents()) out.insert(a);
            collect_agents(f.body(), out);
            return;
        case Formula::Kind::Trusts:
            out.insert(f.truster());
            out.insert(f.trustee());
            collect_agents(f.body(), out);
            return;
    }
}

inline void collect_arities(const Formula& f, const SourcePos& pos,
                            std::map<std::string, std::size_t>& arity,
                            std::vector<Diagnostic>& diags) {
    switch (f.kind()) {
        case Formula::Kind::Atom: {
            const Atom& a = f.as_atom();
            auto [it, inserted] = arity.emplace(a.predicate, a.args.size());
            if (!inserted && it->second != a.args.size())
                diags.push_back(Diagnostic{
                    Severity::Error, DiagCode::ArityMismatch,
                    "predicate '" + a.predicate + "' used with arity " +
                        std::to_string(a.args.size()) + " but previously with arity " +
                        std::to_string(it->second),
                    pos});
            return;
        }
        case Formula::Kind::Not:
        case Formula::Kind::Believes:
        case Formula::Kind::Due:
        case Formula::Kind::Trusts:
            collect_arities(f.body(), pos, arity, diags);
            return;
        case Formula::Kind::And:
        case Formula::Kind::Implies:
            collect_arities(f.lhs(), pos, arity, diags);
            collect_arities(f.rhs(), pos, arity, diags);
            return;
    }
}

} // namespace detail

/// Whole-base validation: safety, depth, agent registry, predicate arity
/// and groundness checks. An empty error set means the base is ready for
/// saturation; warnings flag statements that are legal but inert.
inline std::vector<Diagnostic> validate(const PolicyBase& pb, const EngineConfig& cfg = {}) {
    if (cfg.depth_bound < 1) throw std::invalid_argument("depth_bound must be >= 1");
    std::vector<Diagnostic> diags;
    std::map<std::string, std::size_t> arity;

    if (!pb.registry.contains(pb.owner))
        diags.push_back(Diagnostic{Severity::Error, DiagCode::UnknownAgent,
                                   "owner '" + pb.owner + "' is not in the agent registry", {}});

    for (const Statement& st : pb.statements) {
        const Formula surface = denormalize(st);
        detail::collect_arities(surface, st.pos, arity, diags);

        std::set<Agent> mentioned;
        detail::collect_agents(surface, mentioned);
        for (const Agent& a : mentioned)
            if (!pb.registry.contains(a))
                diags.push_back(Diagnostic{Severity::Error, DiagCode::UnknownAgent,
                                           "agent '" + a + "' is not declared", st.pos});

        if (const auto* c = std::get_if<Credential>(&st.value)) {
            if (!is_ground(c->body))
                diags.push_back(Diagnostic{Severity::Error, DiagCode::NonGroundFact,
                                           "credential must be ground: " + pretty(surface), st.pos});
            if (modal_depth(c->body) > cfg.depth_bound - 1)
                diags.push_back(Diagnostic{Severity::Error, DiagCode::DepthExceeded,
                                           "credential body exceeds depth bound " +
                                               std::to_string(cfg.depth_bound) + ": " + pretty(surface),
                                           st.pos});
        } else if (const auto* t = std::get_if<TrustStatement>(&st.value)) {
            if (modal_depth(t->body) > cfg.depth_bound - 1)
                diags.push_back(Diagnostic{Severity::Error, DiagCode::DepthExceeded,
                                           "trust body exceeds depth bound " +
                                               std::to_string(cfg.depth_bound) + ": " + pretty(surface),
                                           st.pos});
        } else if (const auto* d = std::get_if<StatedProvenance>(&st.value)) {
            if (!is_ground(d->inner))
                diags.push_back(Diagnostic{Severity::Error, DiagCode::NonGroundFact,
                                           "stated provenance must be ground: " + pretty(surface),
                                           st.pos});
            if (!d->is_belief())
                diags.push_back(Diagnostic{Severity::Warning, DiagCode::InertDue,
                                           "'due' over a non-belief body asserts nothing: " +
                                               pretty(surface),
                                           st.pos});
            else if (modal_depth(d->body()) > cfg.depth_bound - 1)
                diags.push_back(Diagnostic{Severity::Error, DiagCode::DepthExceeded,
                                           "stated-provenance body exceeds depth bound " +
                                               std::to_string(cfg.depth_bound) + ": " + pretty(surface),
                                           st.pos});
        } else {
            const auto& r = st.as<Rule>();
            if (r.head.agent != pb.owner)
                diags.push_back(Diagnostic{Severity::Error, DiagCode::NotInFragment,
                                           "rule head must be a belief of the owner '" + pb.owner + "'",
                                           st.pos});
            std::set<std::string> body_vars;
            for (const BodyAtom& a : r.body) {
                collect_free_vars(body_atom_formula(a), body_vars);
                if (const auto* b = std::get_if<BeliefAtom>(&a)) {
                    if (modal_depth(b->body) > cfg.depth_bound - 1)
                        diags.push_back(Diagnostic{Severity::Error, DiagCode::DepthExceeded,
                                                   "belief-atom body exceeds depth bound " +
                                                       std::to_string(cfg.depth_bound) + ": " +
                                                       pretty(body_atom_formula(a)),
                                                   st.pos});
                } else {
                    const auto& g = std::get<GuardedAtom>(a);
                    if (!g.is_belief())
                        diags.push_back(Diagnostic{Severity::Warning, DiagCode::InertDue,
                                                   "'due' guard over a non-belief never matches: " +
                                                       pretty(body_atom_formula(a)),
                                                   st.pos});
                    else if (modal_depth(g.body()) > cfg.depth_bound - 1)
                        diags.push_back(Diagnostic{Severity::Error, DiagCode::DepthExceeded,
                                                   "guarded belief body exceeds depth bound " +
                                                       std::to_string(cfg.depth_bound) + ": " +
                                                       pretty(body_atom_formula(a)),
                                                   st.pos});
                }
            }
            for (const Term& t : r.head.atom.args)
                if (t.is_variable() && !body_vars.count(t.name))
                    diags.push_back(Diagnostic{Severity::Error, DiagCode::UnsafeRule,
                                               "head variable '" + t.name +
                                                   "' does not occur in the rule body",
                                               st.pos});
        }
    }
    return diags;
}

} // namespace provauth

#endif // PROVAUTH_VALIDATE_HPP
