#ifndef PROVAUTH_CORE_HPP
#define PROVAUTH_CORE_HPP

/*
 * Core value model: agents, agent sets, terms, atoms and the recursive
 * formula tree, together with substitution and structural utilities.
 * Everything here is an immutable value after construction.
 */

#include <algorithm>
#include <cassert>
#include <compare>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace provauth {

using Agent = std::string;

/// A finite, duplicate-free set of agent names. Stored sorted so that
/// equality and ordering are insensitive to insertion order.
class AgentSet {
public:
    AgentSet() = default;
    AgentSet(std::initializer_list<Agent> init) : members_(init) { canonicalize(); }
    explicit AgentSet(std::vector<Agent> members) : members_(std::move(members)) { canonicalize(); }

    static AgentSet single(Agent a) {
        AgentSet s;
        s.members_.push_back(std::move(a));
        return s;
    }

    bool contains(const Agent& a) const {
        return std::binary_search(members_.begin(), members_.end(), a);
    }

    bool subset_of(const AgentSet& other) const {
        return std::includes(other.members_.begin(), other.members_.end(),
                             members_.begin(), members_.end());
    }

    bool intersects(const AgentSet& other) const {
        auto i = members_.begin();
        auto j = other.members_.begin();
        while (i != members_.end() && j != other.members_.end()) {
            if (*i == *j) return true;
            if (*i < *j) ++i; else ++j;
        }
        return false;
    }

    AgentSet union_with(const AgentSet& other) const {
        AgentSet out;
        std::set_union(members_.begin(), members_.end(),
                       other.members_.begin(), other.members_.end(),
                       std::back_inserter(out.members_));
        return out;
    }

    void insert(Agent a) {
        auto it = std::lower_bound(members_.begin(), members_.end(), a);
        if (it == members_.end() || *it != a) members_.insert(it, std::move(a));
    }

    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }
    const std::vector<Agent>& members() const { return members_; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    friend bool operator==(const AgentSet&, const AgentSet&) = default;
    friend auto operator<=>(const AgentSet& a, const AgentSet& b) {
        return a.members_ <=> b.members_;
    }

    /// Renders as "{A, B, C}" with members in sorted order.
    std::string to_string() const {
        std::string out = "{";
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (i) out += ", ";
            out += members_[i];
        }
        out += "}";
        return out;
    }

private:
    void canonicalize() {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    std::vector<Agent> members_;
};

enum class TermKind { Constant, Variable };

struct Term {
    TermKind kind = TermKind::Constant;
    std::string name;

    static Term constant(std::string n) { return {TermKind::Constant, std::move(n)}; }
    static Term variable(std::string n) { return {TermKind::Variable, std::move(n)}; }

    bool is_variable() const { return kind == TermKind::Variable; }

    friend bool operator==(const Term&, const Term&) = default;
    friend auto operator<=>(const Term&, const Term&) = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    friend bool operator==(const Atom&, const Atom&) = default;
    friend auto operator<=>(const Atom&, const Atom&) = default;
};

class Formula;

namespace detail {
struct FormulaNode;
template <typename Data>
Formula make_formula(Data data);
} // namespace detail

/// Recursive modal formula tree. Shared immutable nodes; cheap to copy.
///
/// Variants: Atom | Not f | And f g | Implies f g
///         | Believes i f   -- "i says f"
///         | Due AE f       -- "due {AE} f"
///         | Trusts i j f   -- "i trusts j on f"
class Formula {
public:
    enum class Kind { Atom, Not, And, Implies, Believes, Due, Trusts };

    Formula() = default;

    static Formula atom(Atom a);
    static Formula atom(std::string predicate, std::vector<Term> args = {});
    static Formula negation(Formula body);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula implication(Formula lhs, Formula rhs);
    static Formula believes(Agent agent, Formula body);
    static Formula due(AgentSet agents, Formula body);
    static Formula trusts(Agent truster, Agent trustee, Formula body);

    bool valid() const { return node_ != nullptr; }

    Kind kind() const;
    const Atom& as_atom() const;

    /// Body of Not / Believes / Due / Trusts.
    const Formula& body() const;
    const Formula& lhs() const;
    const Formula& rhs() const;

    /// Believing agent of a Believes node.
    const Agent& agent() const;
    const Agent& truster() const;
    const Agent& trustee() const;
    const AgentSet& agents() const;

    /// Total structural order; negative/zero/positive like strcmp.
    static int compare(const Formula& a, const Formula& b);

    friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
    friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

private:
    template <typename Data>
    friend Formula detail::make_formula(Data data);

    explicit Formula(std::shared_ptr<const detail::FormulaNode> node) : node_(std::move(node)) {}

    std::shared_ptr<const detail::FormulaNode> node_;
};

namespace detail {

struct AtomData { Atom atom; };
struct NotData { Formula body; };
struct AndData { Formula lhs, rhs; };
struct ImpliesData { Formula lhs, rhs; };
struct BelievesData { Agent agent; Formula body; };
struct DueData { AgentSet agents; Formula body; };
struct TrustsData { Agent truster, trustee; Formula body; };

struct FormulaNode {
    // variant index order must track Formula::Kind
    std::variant<AtomData, NotData, AndData, ImpliesData, BelievesData, DueData, TrustsData> data;
};

} // namespace detail

inline Formula Formula::atom(Atom a) { return detail::make_formula(detail::AtomData{std::move(a)}); }
inline Formula Formula::atom(std::string predicate, std::vector<Term> args) {
    return atom(Atom{std::move(predicate), std::move(args)});
}
inline Formula Formula::negation(Formula body) {
    return detail::make_formula(detail::NotData{std::move(body)});
}
inline Formula Formula::conjunction(Formula lhs, Formula rhs) {
    return detail::make_formula(detail::AndData{std::move(lhs), std::move(rhs)});
}
inline Formula Formula::implication(Formula lhs, Formula rhs) {
    return detail::make_formula(detail::ImpliesData{std::move(lhs), std::move(rhs)});
}
inline Formula Formula::believes(Agent agent, Formula body) {
    return detail::make_formula(detail::BelievesData{std::move(agent), std::move(body)});
}
inline Formula Formula::due(AgentSet agents, Formula body) {
    return detail::make_formula(detail::DueData{std::move(agents), std::move(body)});
}
inline Formula Formula::trusts(Agent truster, Agent trustee, Formula body) {
    return detail::make_formula(
        detail::TrustsData{std::move(truster), std::move(trustee), std::move(body)});
}

namespace detail {
template <typename Data>
Formula make_formula(Data data) {
    return Formula(std::make_shared<const FormulaNode>(FormulaNode{std::move(data)}));
}
} // namespace detail

inline Formula::Kind Formula::kind() const {
    assert(node_);
    return static_cast<Kind>(node_->data.index());
}

inline const Atom& Formula::as_atom() const { return std::get<detail::AtomData>(node_->data).atom; }

inline const Formula& Formula::body() const {
    switch (kind()) {
        case Kind::Not: return std::get<detail::NotData>(node_->data).body;
        case Kind::Believes: return std::get<detail::BelievesData>(node_->data).body;
        case Kind::Due: return std::get<detail::DueData>(node_->data).body;
        case Kind::Trusts: return std::get<detail::TrustsData>(node_->data).body;
        default: throw std::logic_error("Formula::body: node has no body");
    }
}

inline const Formula& Formula::lhs() const {
    if (kind() == Kind::And) return std::get<detail::AndData>(node_->data).lhs;
    return std::get<detail::ImpliesData>(node_->data).lhs;
}
inline const Formula& Formula::rhs() const {
    if (kind() == Kind::And) return std::get<detail::AndData>(node_->data).rhs;
    return std::get<detail::ImpliesData>(node_->data).rhs;
}

inline const Agent& Formula::agent() const {
    return std::get<detail::BelievesData>(node_->data).agent;
}
inline const Agent& Formula::truster() const {
    return std::get<detail::TrustsData>(node_->data).truster;
}
inline const Agent& Formula::trustee() const {
    return std::get<detail::TrustsData>(node_->data).trustee;
}
inline const AgentSet& Formula::agents() const {
    return std::get<detail::DueData>(node_->data).agents;
}

inline int Formula::compare(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return 0;
    if (!a.node_) return -1;
    if (!b.node_) return 1;
    if (a.kind() != b.kind())
        return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
    switch (a.kind()) {
        case Kind::Atom: {
            const Atom& x = a.as_atom();
            const Atom& y = b.as_atom();
            if (x == y) return 0;
            return x < y ? -1 : 1;
        }
        case Kind::Not:
            return compare(a.body(), b.body());
        case Kind::And:
        case Kind::Implies: {
            int c = compare(a.lhs(), b.lhs());
            return c ? c : compare(a.rhs(), b.rhs());
        }
        case Kind::Believes: {
            int c = a.agent().compare(b.agent());
            return c ? (c < 0 ? -1 : 1) : compare(a.body(), b.body());
        }
        case Kind::Due: {
            if (a.agents() != b.agents()) return a.agents() < b.agents() ? -1 : 1;
            return compare(a.body(), b.body());
        }
        case Kind::Trusts: {
            int c = a.truster().compare(b.truster());
            if (c) return c < 0 ? -1 : 1;
            c = a.trustee().compare(b.trustee());
            if (c) return c < 0 ? -1 : 1;
            return compare(a.body(), b.body());
        }
    }
    return 0;
}

/// Maximum nesting count of Believes/Due/Trusts along any root-to-leaf
/// path; Not/And/Implies are transparent.
inline int modal_depth(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Atom: return 0;
        case Formula::Kind::Not: return modal_depth(f.body());
        case Formula::Kind::And:
        case Formula::Kind::Implies:
            return std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
        case Formula::Kind::Believes:
        case Formula::Kind::Due:
        case Formula::Kind::Trusts:
            return 1 + modal_depth(f.body());
    }
    return 0;
}

/// Finite map from variable names to constant terms. Applying it twice
/// equals applying it once: the range contains no variables.
class Substitution {
public:
    Substitution() = default;

    void bind(const std::string& var, Term constant) {
        assert(!constant.is_variable());
        map_[var] = std::move(constant);
    }

    const Term* lookup(const std::string& var) const {
        auto it = map_.find(var);
        return it == map_.end() ? nullptr : &it->second;
    }

    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const std::map<std::string, Term>& entries() const { return map_; }

    friend bool operator==(const Substitution&, const Substitution&) = default;
    friend auto operator<=>(const Substitution& a, const Substitution& b) {
        return a.map_ <=> b.map_;
    }

private:
    std::map<std::string, Term> map_;
};

inline Term apply_subst(const Term& t, const Substitution& s) {
    if (t.is_variable()) {
        if (const Term* bound = s.lookup(t.name)) return *bound;
    }
    return t;
}

inline Atom apply_subst(const Atom& a, const Substitution& s) {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const Term& t : a.args) out.args.push_back(apply_subst(t, s));
    return out;
}

inline Formula apply_subst(const Formula& f, const Substitution& s) {
    switch (f.kind()) {
        case Formula::Kind::Atom: return Formula::atom(apply_subst(f.as_atom(), s));
        case Formula::Kind::Not: return Formula::negation(apply_subst(f.body(), s));
        case Formula::Kind::And:
            return Formula::conjunction(apply_subst(f.lhs(), s), apply_subst(f.rhs(), s));
        case Formula::Kind::Implies:
            return Formula::implication(apply_subst(f.lhs(), s), apply_subst(f.rhs(), s));
        case Formula::Kind::Believes:
            return Formula::believes(f.agent(), apply_subst(f.body(), s));
        case Formula::Kind::Due:
            return Formula::due(f.agents(), apply_subst(f.body(), s));
        case Formula::Kind::Trusts:
            return Formula::trusts(f.truster(), f.trustee(), apply_subst(f.body(), s));
    }
    return f;
}

inline void collect_free_vars(const Formula& f, std::set<std::string>& out) {
    switch (f.kind()) {
        case Formula::Kind::Atom:
            for (const Term& t : f.as_atom().args)
                if (t.is_variable()) out.insert(t.name);
            return;
        case Formula::Kind::Not:
        case Formula::Kind::Believes:
        case Formula::Kind::Due:
        case Formula::Kind::Trusts:
            collect_free_vars(f.body(), out);
            return;
        case Formula::Kind::And:
        case Formula::Kind::Implies:
            collect_free_vars(f.lhs(), out);
            collect_free_vars(f.rhs(), out);
            return;
    }
}

inline std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> out;
    collect_free_vars(f, out);
    return out;
}

inline bool is_ground(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Atom:
            for (const Term& t : f.as_atom().args)
                if (t.is_variable()) return false;
            return true;
        case Formula::Kind::Not:
        case Formula::Kind::Believes:
        case Formula::Kind::Due:
        case Formula::Kind::Trusts:
            return is_ground(f.body());
        case Formula::Kind::And:
        case Formula::Kind::Implies:
            return is_ground(f.lhs()) && is_ground(f.rhs());
    }
    return true;
}

// ---- belief fragment helpers -------------------------------------------

/// Atom or a single negation of one.
inline bool is_literal(const Formula& f) {
    return f.kind() == Formula::Kind::Atom ||
           (f.kind() == Formula::Kind::Not && f.body().kind() == Formula::Kind::Atom);
}

/// The fragment admitted under a belief operator: a literal, or a chain of
/// possibly-negated beliefs ending in a literal. Double negation, And,
/// Implies, Due and Trusts are excluded.
inline bool is_belief_body(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Atom: return true;
        case Formula::Kind::Not: {
            const Formula& b = f.body();
            if (b.kind() == Formula::Kind::Atom) return true;
            if (b.kind() == Formula::Kind::Believes) return is_belief_body(b.body());
            return false;
        }
        case Formula::Kind::Believes: return is_belief_body(f.body());
        default: return false;
    }
}

/// View of a fact-shaped formula: B_i psi or not B_i psi.
struct BeliefFact {
    bool positive = true;
    Agent agent;
    Formula body;
};

inline std::optional<BeliefFact> as_belief_fact(const Formula& f) {
    if (f.kind() == Formula::Kind::Believes)
        return BeliefFact{true, f.agent(), f.body()};
    if (f.kind() == Formula::Kind::Not && f.body().kind() == Formula::Kind::Believes)
        return BeliefFact{false, f.body().agent(), f.body().body()};
    return std::nullopt;
}

inline Formula make_belief_fact(bool positive, const Agent& agent, const Formula& body) {
    Formula b = Formula::believes(agent, body);
    return positive ? b : Formula::negation(b);
}

/// Classical complement within the fragment: strips a leading Not or adds one.
inline Formula negate_body(const Formula& f) {
    if (f.kind() == Formula::Kind::Not) return f.body();
    return Formula::negation(f);
}

} // namespace provauth

#endif // PROVAUTH_CORE_HPP
