// provauth command-line front end: validate policy files, answer
// (provenance-constrained) queries, enumerate minimal provenances, report
// conflicts, and append an audit log.
//
// Exit codes: 0 success / holds, 1 failed check / denied / conflicts
// present, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "provauth/provauth.hpp"

namespace {

using namespace provauth;

struct LoadedPolicy {
    std::string text;
    PolicyBase base;
};

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return buf.str();
}

void print_diagnostics(const std::vector<Diagnostic>& diags) {
    for (const Diagnostic& d : diags) std::cerr << format_diagnostic(d) << "\n";
}

/// Reads, parses and validates a policy file. On failure prints
/// diagnostics and returns the exit code to use.
std::variant<LoadedPolicy, int> load_policy(const std::string& path, int depth_bound,
                                            bool strict = false) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read file: " << path << "\n";
        return 2;
    }
    PolicyParse parsed = parse_policy(*text, depth_bound);
    print_diagnostics(parsed.diagnostics);
    if (!parsed.ok()) return 1;
    EngineConfig cfg;
    cfg.depth_bound = depth_bound;
    std::vector<Diagnostic> diags = validate(*parsed.base, cfg);
    print_diagnostics(diags);
    if (has_errors(diags)) return 1;
    if (strict && !diags.empty()) return 1;
    if (strict && !parsed.diagnostics.empty()) return 1;
    return LoadedPolicy{std::move(*text), std::move(*parsed.base)};
}

std::optional<AgentSet> parse_csv_agents(const std::string& csv) {
    if (csv.empty()) return std::nullopt;
    std::vector<Agent> members;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ',')) {
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (!item.empty()) members.push_back(item);
    }
    return AgentSet(std::move(members));
}

std::string render_substitution(const Substitution& sub) {
    std::string out;
    for (const auto& [var, term] : sub.entries()) {
        if (!out.empty()) out += ", ";
        out += var + "=" + term.name;
    }
    return out;
}

void write_audit(const std::string& audit_path, const std::string& policy_text,
                 const std::string& query_text, const std::string& decision,
                 const QueryResult* result, int& exit_code) {
    if (audit_path.empty()) return;
    AuditRecord rec;
    rec.timestamp = rfc3339_utc_now();
    rec.digest = sha256_hex(policy_text);
    rec.query = query_text;
    rec.decision = decision;
    rec.proof = nullptr;
    if (result) {
        rec.provenances = result->provenances;
        if (!result->answers.empty())
            rec.proof = detail::proof_node_json(result->answers.front().proof);
    }
    try {
        audit_append(audit_path, rec);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        exit_code = 2;
    }
}

int cmd_check(const std::string& path, int depth_bound, bool strict) {
    auto loaded = load_policy(path, depth_bound, strict);
    if (auto* code = std::get_if<int>(&loaded)) return *code;
    return 0;
}

int cmd_query(const std::string& path, const std::string& query_text, int depth_bound,
              const std::string& exclude_csv, const std::string& within_csv, bool json,
              const std::string& audit_path) {
    auto loaded = load_policy(path, depth_bound);
    if (auto* code = std::get_if<int>(&loaded)) {
        if (*code == 1) {
            // The file was readable but invalid: still record the attempt.
            int exit_code = 2;
            if (auto text = read_file(path))
                write_audit(audit_path, *text, query_text, "error", nullptr, exit_code);
            return 2;
        }
        return *code;
    }
    LoadedPolicy& policy = std::get<LoadedPolicy>(loaded);

    FormulaParse q = parse_formula(query_text);
    if (!q.ok()) {
        std::cerr << format_diagnostic(*q.error) << "\n";
        int exit_code = 2;
        write_audit(audit_path, policy.text, query_text, "error", nullptr, exit_code);
        return 2;
    }

    EngineConfig cfg;
    cfg.depth_bound = depth_bound;
    Closure closure = saturate(policy.base, cfg);

    QueryResult result;
    try {
        result = holds(closure, *q.formula);
    } catch (const UnsupportedQueryShape& e) {
        std::cerr << "error: " << e.what() << "\n";
        int exit_code = 2;
        write_audit(audit_path, policy.text, query_text, "error", nullptr, exit_code);
        return 2;
    }

    std::optional<AgentSet> exclude = parse_csv_agents(exclude_csv);
    std::optional<AgentSet> within = parse_csv_agents(within_csv);
    if (exclude || within) {
        std::erase_if(result.answers, [&](const Answer& a) {
            if (exclude && a.provenance.intersects(*exclude)) return true;
            if (within && !a.provenance.subset_of(*within)) return true;
            return false;
        });
        detail::finish(result);
    }

    if (json) {
        std::cout << query_result_json(result, query_text).dump() << "\n";
    } else {
        std::cout << (result.holds ? "HOLDS" : "DENIED") << "\n";
        for (const Answer& a : result.answers) {
            std::string sub = render_substitution(a.subst);
            if (!sub.empty())
                std::cout << sub << " " << a.provenance.to_string() << "\n";
            else
                std::cout << a.provenance.to_string() << "\n";
        }
    }

    int exit_code = result.holds ? 0 : 1;
    write_audit(audit_path, policy.text, query_text, result.holds ? "holds" : "denied", &result,
                exit_code);
    return exit_code;
}

int cmd_provenance(const std::string& path, const std::string& belief_text, int depth_bound,
                   bool json, const std::string& audit_path) {
    auto loaded = load_policy(path, depth_bound);
    if (auto* code = std::get_if<int>(&loaded)) return *code == 1 ? 2 : *code;
    LoadedPolicy& policy = std::get<LoadedPolicy>(loaded);

    FormulaParse q = parse_formula(belief_text);
    if (!q.ok()) {
        std::cerr << format_diagnostic(*q.error) << "\n";
        return 2;
    }
    if (!as_belief_fact(*q.formula)) {
        std::cerr << "error: " << UnsupportedQueryShape(*q.formula).what() << "\n";
        return 2;
    }
    if (!is_ground(*q.formula)) {
        std::cerr << "error: the belief must be ground: " << belief_text << "\n";
        return 2;
    }

    EngineConfig cfg;
    cfg.depth_bound = depth_bound;
    Closure closure = saturate(policy.base, cfg);
    QueryResult result = holds(closure, *q.formula);

    if (json) {
        OrderedJson out;
        out["v"] = 1;
        out["belief"] = belief_text;
        OrderedJson provs = OrderedJson::array();
        for (const AgentSet& p : result.provenances) provs.push_back(p.members());
        out["provenances"] = std::move(provs);
        std::cout << out.dump() << "\n";
    } else {
        for (const AgentSet& p : result.provenances) std::cout << p.to_string() << "\n";
    }

    int exit_code = result.holds ? 0 : 1;
    write_audit(audit_path, policy.text, belief_text, result.holds ? "holds" : "denied", &result,
                exit_code);
    return exit_code;
}

int cmd_conflicts(const std::string& path, int depth_bound, bool json) {
    auto loaded = load_policy(path, depth_bound);
    if (auto* code = std::get_if<int>(&loaded)) return *code == 1 ? 2 : *code;
    LoadedPolicy& policy = std::get<LoadedPolicy>(loaded);

    EngineConfig cfg;
    cfg.depth_bound = depth_bound;
    Closure closure = saturate(policy.base, cfg);
    const std::vector<Conflict>& conflicts = detect_conflicts(closure);

    if (json) {
        OrderedJson out = OrderedJson::array();
        for (const Conflict& c : conflicts) {
            OrderedJson item;
            item["kind"] = conflict_kind_name(c.kind);
            item["agent"] = c.agent;
            item["formula"] = pretty(c.formula);
            out.push_back(std::move(item));
        }
        std::cout << out.dump() << "\n";
    } else {
        for (const Conflict& c : conflicts)
            std::cout << conflict_kind_name(c.kind) << " " << c.agent << " " << pretty(c.formula)
                      << "\n";
    }
    return conflicts.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"provenance-aware authorization policy engine"};
    app.require_subcommand(1);

    int depth_bound = provauth::kDefaultDepthBound;
    app.add_option("--depth", depth_bound, "modal depth bound (default 3)")
        ->check(CLI::PositiveNumber);

    std::string path;
    std::string query_text;
    std::string exclude_csv, within_csv, audit_path;
    bool json = false, strict = false;

    CLI::App* check = app.add_subcommand("check", "parse and validate a policy file");
    check->add_option("file", path, "policy file")->required();
    check->add_flag("--strict", strict, "treat warnings as errors");

    CLI::App* query = app.add_subcommand("query", "answer an authorization query");
    query->add_option("file", path, "policy file")->required();
    query->add_option("-q,--query", query_text, "query formula")->required();
    query->add_option("--exclude", exclude_csv, "agents whose provenance is forbidden (csv)");
    query->add_option("--within", within_csv, "provenance must stay within these agents (csv)");
    query->add_flag("--json", json, "emit the full result as JSON");
    query->add_option("--audit", audit_path, "append an audit record to this file");

    CLI::App* provenance = app.add_subcommand("provenance", "list minimal provenance sets");
    provenance->add_option("file", path, "policy file")->required();
    provenance->add_option("-q,--query", query_text, "ground belief")->required();
    provenance->add_flag("--json", json, "emit JSON");
    provenance->add_option("--audit", audit_path, "append an audit record to this file");

    CLI::App* conflicts = app.add_subcommand("conflicts", "report opposing derived facts");
    conflicts->add_option("file", path, "policy file")->required();
    conflicts->add_flag("--json", json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(check)) return cmd_check(path, depth_bound, strict);
        if (app.got_subcommand(query))
            return cmd_query(path, query_text, depth_bound, exclude_csv, within_csv, json,
                             audit_path);
        if (app.got_subcommand(provenance))
            return cmd_provenance(path, query_text, depth_bound, json, audit_path);
        if (app.got_subcommand(conflicts)) return cmd_conflicts(path, depth_bound, json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
