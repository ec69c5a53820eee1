#ifndef PROVAUTH_PROOF_HPP
#define PROVAUTH_PROOF_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "provauth/core.hpp"

namespace provauth {

/// Derivation step tags. Stated leaves reference a policy statement by its
/// 0-based position; the other tags name the derivation rule applied to
/// the children.
enum class RuleTag {
    Stated,                 // policy statement, instantiated
    TrustLift,              // R2: i trusts j on phi,  B_j phi  |-  B_i phi
    PositiveIntrospection,  // R3: B_j psi             |-  B_j B_j psi
    NegativeIntrospection,  // R4: not B_j psi         |-  B_j not B_j psi
    RuleFire,               // R5: rule with every body atom matched
};

inline const char* rule_tag_name(RuleTag t) {
    switch (t) {
        case RuleTag::Stated: return "stated";
        case RuleTag::TrustLift: return "R2";
        case RuleTag::PositiveIntrospection: return "R3";
        case RuleTag::NegativeIntrospection: return "R4";
        case RuleTag::RuleFire: return "R5";
    }
    return "?";
}

/// One node of a machine-checkable derivation. Replaying the tagged rule
/// on the children's conclusions reproduces the node's conclusion and
/// provenance exactly.
struct ProofTree {
    Formula conclusion;
    RuleTag rule = RuleTag::Stated;
    std::optional<std::size_t> statement;  // set iff rule == Stated
    AgentSet provenance;
    std::vector<ProofTree> children;
};

inline ProofTree stated_leaf(Formula conclusion, std::size_t statement_index, AgentSet provenance) {
    return ProofTree{std::move(conclusion), RuleTag::Stated, statement_index,
                     std::move(provenance), {}};
}

} // namespace provauth

#endif // PROVAUTH_PROOF_HPP
