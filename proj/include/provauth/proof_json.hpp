#ifndef PROVAUTH_PROOF_JSON_HPP
#define PROVAUTH_PROOF_JSON_HPP

#include <string>

#include <json.hpp>

#include "provauth/pretty.hpp"
#include "provauth/proof.hpp"
#include "provauth/query.hpp"

namespace provauth {

using OrderedJson = nlohmann::ordered_json;

namespace detail {

inline OrderedJson proof_node_json(const ProofTree& t) {
    OrderedJson node;
    node["conclusion"] = pretty(t.conclusion);
    node["rule"] = rule_tag_name(t.rule);
    if (t.rule == RuleTag::Stated && t.statement) node["statement"] = *t.statement;
    node["provenance"] = t.provenance.members();
    OrderedJson children = OrderedJson::array();
    for (const ProofTree& c : t.children) children.push_back(proof_node_json(c));
    node["children"] = std::move(children);
    return node;
}

} // namespace detail

/// Stable proof document: {"v":1, "conclusion":..., "rule":..., ...} with
/// deterministic field ordering and agent names sorted.
inline OrderedJson proof_json(const ProofTree& t) {
    OrderedJson root;
    root["v"] = 1;
    OrderedJson node = detail::proof_node_json(t);
    for (auto& [key, value] : node.items()) root[key] = std::move(value);
    return root;
}

inline std::string proof_to_json(const ProofTree& t) { return proof_json(t).dump(); }

inline OrderedJson query_result_json(const QueryResult& r, const std::string& query_text) {
    OrderedJson out;
    out["v"] = 1;
    out["query"] = query_text;
    out["holds"] = r.holds;
    OrderedJson provs = OrderedJson::array();
    for (const AgentSet& p : r.provenances) provs.push_back(p.members());
    out["provenances"] = std::move(provs);
    OrderedJson answers = OrderedJson::array();
    for (const Answer& a : r.answers) {
        OrderedJson ans;
        OrderedJson sub = OrderedJson::object();
        for (const auto& [var, term] : a.subst.entries()) sub[var] = term.name;
        ans["substitution"] = std::move(sub);
        ans["provenance"] = a.provenance.members();
        ans["proof"] = detail::proof_node_json(a.proof);
        answers.push_back(std::move(ans));
    }
    out["answers"] = std::move(answers);
    return out;
}

} // namespace provauth

#endif // PROVAUTH_PROOF_JSON_HPP
