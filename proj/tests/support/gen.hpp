#ifndef PROVAUTH_TESTS_SUPPORT_GEN_HPP
#define PROVAUTH_TESTS_SUPPORT_GEN_HPP

// Random generators: arbitrary surface formulas for parser round-trips,
// and policy bases inside the statement fragment for engine properties.

#include <cassert>
#include <random>
#include <string>
#include <vector>

#include "provauth/core.hpp"
#include "provauth/statement.hpp"
#include "provauth/validate.hpp"

namespace testsupport {

using provauth::Agent;
using provauth::AgentSet;
using provauth::Formula;
using provauth::PolicyBase;
using provauth::Term;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    int range(int lo, int hi) {  // inclusive
        return std::uniform_int_distribution<int>(lo, hi)(eng_);
    }
    bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_) < p; }
    template <typename T>
    const T& pick(const std::vector<T>& pool) {
        return pool[static_cast<std::size_t>(range(0, static_cast<int>(pool.size()) - 1))];
    }

private:
    std::mt19937_64 eng_;
};

// ---- arbitrary surface formulas (parser round-trip) ----------------------

inline Term gen_term(Rng& rng) {
    static const std::vector<std::string> constants{"a", "dave", "c1", "board"};
    static const std::vector<std::string> variables{"X", "Y", "Resource"};
    if (rng.chance(0.3)) return Term::variable(rng.pick(variables));
    return Term::constant(rng.pick(constants));
}

inline Formula gen_surface_atom(Rng& rng) {
    static const std::vector<std::string> predicates{"p", "q", "canAccess", "Permit"};
    std::vector<Term> args;
    int arity = rng.range(0, 3);
    for (int i = 0; i < arity; ++i) args.push_back(gen_term(rng));
    return Formula::atom(rng.pick(predicates), std::move(args));
}

inline Agent gen_agent_name(Rng& rng) {
    static const std::vector<std::string> agents{"A", "B", "Sam", "LOCAL", "hr"};
    return rng.pick(agents);
}

/// Arbitrary formula over every constructor; used to check that
/// parse(pretty(f)) reproduces f exactly.
inline Formula gen_surface_formula(Rng& rng, int depth) {
    if (depth <= 0) return gen_surface_atom(rng);
    switch (rng.range(0, 6)) {
        case 0: return gen_surface_atom(rng);
        case 1: return Formula::negation(gen_surface_formula(rng, depth - 1));
        case 2:
            return Formula::conjunction(gen_surface_formula(rng, depth - 1),
                                        gen_surface_formula(rng, depth - 1));
        case 3:
            return Formula::implication(gen_surface_formula(rng, depth - 1),
                                        gen_surface_formula(rng, depth - 1));
        case 4: return Formula::believes(gen_agent_name(rng), gen_surface_formula(rng, depth - 1));
        case 5: {
            AgentSet members;
            int n = rng.range(1, 3);
            for (int i = 0; i < n; ++i) members.insert(gen_agent_name(rng));
            return Formula::due(std::move(members), gen_surface_formula(rng, depth - 1));
        }
        default:
            return Formula::trusts(gen_agent_name(rng), gen_agent_name(rng),
                                   gen_surface_formula(rng, depth - 1));
    }
}

// ---- policy bases in the statement fragment ------------------------------

struct GenLimits {
    int max_agents = 6;
    int max_statements = 10;
    int depth_bound = 3;
};

namespace gen_detail {

inline const std::vector<std::string>& agent_pool() {
    static const std::vector<std::string> pool{"A", "B", "C", "D", "E", "F"};
    return pool;
}

inline Formula gen_atom_in_fragment(Rng& rng, bool allow_vars) {
    // Fixed predicate arities so generated bases always pass validation.
    static const std::vector<std::pair<std::string, int>> predicates{{"q", 0}, {"p", 1}, {"r", 2}};
    static const std::vector<std::string> constants{"c0", "c1"};
    static const std::vector<std::string> variables{"X", "Y"};
    const auto& [name, arity] = rng.pick(predicates);
    std::vector<Term> args;
    for (int i = 0; i < arity; ++i) {
        if (allow_vars && rng.chance(0.35))
            args.push_back(Term::variable(rng.pick(variables)));
        else
            args.push_back(Term::constant(rng.pick(constants)));
    }
    return Formula::atom(name, std::move(args));
}

/// A belief body: literal, or a (possibly negated) belief chain.
inline Formula gen_belief_body(Rng& rng, const std::vector<Agent>& agents, int max_depth,
                               bool allow_vars) {
    Formula core;
    if (max_depth <= 0 || rng.chance(0.55))
        core = gen_atom_in_fragment(rng, allow_vars);
    else
        core = Formula::believes(rng.pick(agents),
                                 gen_belief_body(rng, agents, max_depth - 1, allow_vars));
    return rng.chance(0.3) ? Formula::negation(core) : core;
}

inline AgentSet gen_guard(Rng& rng, const std::vector<Agent>& agents) {
    AgentSet out;
    int n = rng.range(1, std::min<int>(3, static_cast<int>(agents.size())));
    for (int i = 0; i < n; ++i) out.insert(rng.pick(agents));
    return out;
}

} // namespace gen_detail

namespace gen_detail {

inline Formula ground_instance(Rng& rng, const Formula& f) {
    provauth::Substitution s;
    static const std::vector<std::string> constants{"c0", "c1"};
    for (const std::string& var : provauth::free_vars(f))
        s.bind(var, Term::constant(rng.pick(constants)));
    return provauth::apply_subst(f, s);
}

/// Signed (agent, body) pairs that have a chance of being derivable, used
/// to correlate later statements with earlier ones so that trust lifting
/// and rule firing actually happen.
struct LikelyFact {
    bool positive;
    Agent agent;
    Formula body;
};

} // namespace gen_detail

/// A random policy base inside the statement fragment. Statements share a
/// small pool of bodies and frequently reference facts the earlier
/// statements can derive. The result always validates without errors
/// (warnings from inert guards are possible).
inline PolicyBase gen_base(Rng& rng, const GenLimits& lim = {}) {
    using namespace gen_detail;
    PolicyBase pb;
    int n_agents = rng.range(2, lim.max_agents);
    std::vector<Agent> agents(agent_pool().begin(), agent_pool().begin() + n_agents);
    for (const Agent& a : agents) pb.registry.insert(a);
    pb.owner = agents.front();

    const int body_depth = lim.depth_bound - 1;

    // Shared body pool; most statements draw from it.
    std::vector<Formula> pool;
    int pool_size = rng.range(2, 4);
    for (int i = 0; i < pool_size; ++i)
        pool.push_back(gen_belief_body(rng, agents, body_depth, rng.chance(0.3)));
    auto pick_body = [&](bool allow_vars) -> Formula {
        if (rng.chance(0.75)) {
            const Formula& chosen = rng.pick(pool);
            if (!allow_vars && !provauth::is_ground(chosen)) return ground_instance(rng, chosen);
            return chosen;
        }
        return gen_belief_body(rng, agents, body_depth, allow_vars);
    };

    std::vector<LikelyFact> likely;

    int n_statements = rng.range(1, lim.max_statements);
    for (int i = 0; i < n_statements; ++i) {
        Formula stmt;
        int kind = rng.range(0, 99);
        if (kind < 30) {
            // credential, ground
            bool positive = rng.chance(0.7);
            Agent agent = rng.pick(agents);
            Formula body = pick_body(false);
            likely.push_back({positive, agent, body});
            stmt = provauth::make_belief_fact(positive, agent, body);
        } else if (kind < 55) {
            // trust statement; half the time over an already-likely fact of
            // the trustee so the lift can fire
            Agent truster = rng.pick(agents);
            Agent trustee;
            Formula body;
            if (!likely.empty() && rng.chance(0.5)) {
                const LikelyFact& f = rng.pick(likely);
                trustee = f.agent;
                if (f.positive) {
                    body = f.body;
                } else if (provauth::modal_depth(f.body) + 1 <= body_depth) {
                    // A negative fact lifts through its introspected form.
                    body = Formula::negation(Formula::believes(f.agent, f.body));
                } else {
                    body = f.body;
                }
            } else {
                trustee = rng.pick(agents);
                body = pick_body(rng.chance(0.4));
            }
            likely.push_back({true, truster, body});
            stmt = Formula::trusts(truster, trustee, body);
        } else if (kind < 65) {
            // stated provenance, ground
            Agent agent = rng.pick(agents);
            Formula body = pick_body(false);
            likely.push_back({true, agent, body});
            stmt = Formula::due(gen_guard(rng, agents), Formula::believes(agent, body));
        } else {
            // rule with 1..3 conjuncts and an owner-belief literal head
            int n_atoms = rng.range(1, 3);
            Formula body;
            for (int k = 0; k < n_atoms; ++k) {
                Formula conjunct;
                bool from_likely = !likely.empty() && rng.chance(0.6);
                bool positive = true;
                Agent agent;
                Formula atom_body;
                if (from_likely) {
                    const LikelyFact& f = rng.pick(likely);
                    positive = f.positive;
                    agent = f.agent;
                    atom_body = f.body;
                } else {
                    positive = rng.chance(0.8);
                    agent = rng.pick(agents);
                    atom_body = pick_body(rng.chance(0.5));
                }
                int shape = rng.range(0, 99);
                if (shape < 55 || !positive) {
                    conjunct = provauth::make_belief_fact(positive, agent, atom_body);
                } else if (shape < 95) {
                    conjunct =
                        Formula::due(gen_guard(rng, agents), Formula::believes(agent, atom_body));
                } else {
                    // inert guard: legal, warned, never matches
                    conjunct =
                        Formula::due(gen_guard(rng, agents), gen_atom_in_fragment(rng, false));
                }
                body = (k == 0) ? conjunct : Formula::conjunction(body, conjunct);
            }
            std::set<std::string> body_vars = provauth::free_vars(body);
            std::vector<std::string> var_pool(body_vars.begin(), body_vars.end());
            static const std::vector<std::pair<std::string, int>> head_preds{
                {"q", 0}, {"p", 1}, {"r", 2}};
            static const std::vector<std::string> constants{"c0", "c1"};
            const auto& [name, arity] = rng.pick(head_preds);
            std::vector<Term> args;
            for (int k = 0; k < arity; ++k) {
                if (!var_pool.empty() && rng.chance(0.4))
                    args.push_back(Term::variable(rng.pick(var_pool)));
                else
                    args.push_back(Term::constant(rng.pick(constants)));
            }
            Formula lit = Formula::atom(name, std::move(args));
            if (rng.chance(0.25)) lit = Formula::negation(lit);
            likely.push_back({true, pb.owner,
                              provauth::is_ground(lit) ? lit : ground_instance(rng, lit)});
            stmt = Formula::implication(body, Formula::believes(pb.owner, lit));
        }
        provauth::NormalizeResult n = provauth::normalize(stmt, pb.owner, lim.depth_bound);
        assert(n.ok());
        pb.statements.push_back(std::move(*n.statement));
    }
    return pb;
}

/// One extra random statement for monotonicity checks.
inline PolicyBase extend_base(Rng& rng, const PolicyBase& pb, const GenLimits& lim = {}) {
    PolicyBase extended = pb;
    std::vector<Agent> agents(pb.registry.begin(), pb.registry.end());
    Formula body = gen_detail::gen_belief_body(rng, agents, lim.depth_bound - 1, false);
    Formula stmt;
    if (rng.chance(0.5))
        stmt = provauth::make_belief_fact(rng.chance(0.7), rng.pick(agents), body);
    else
        stmt = Formula::trusts(rng.pick(agents), rng.pick(agents), body);
    provauth::NormalizeResult n = provauth::normalize(stmt, pb.owner, lim.depth_bound);
    assert(n.ok());
    extended.statements.push_back(std::move(*n.statement));
    return extended;
}

} // namespace testsupport

#endif
