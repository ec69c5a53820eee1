#ifndef PROVAUTH_AUDIT_HPP
#define PROVAUTH_AUDIT_HPP

/*
 * Append-only audit log: one JSON object per line, carrying the decision,
 * the policy file digest, the minimal provenance sets and a proof witness,
 * so that a log reader can work out who is responsible for which
 * statements and derivations.
 */

#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <openssl/evp.h>

#include <json.hpp>

#include "provauth/core.hpp"
#include "provauth/proof_json.hpp"

namespace provauth {

struct AuditRecord {
    std::string timestamp;  // RFC 3339 UTC
    std::string digest;     // hex SHA-256 of the policy file bytes
    std::string query;
    std::string decision;   // "holds" | "denied" | "error"
    std::vector<AgentSet> provenances;
    OrderedJson proof;      // proof witness or null
};

inline std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw std::runtime_error("sha256: cannot allocate digest context");
    bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
              EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) == 1 &&
              EVP_DigestFinal_ex(ctx, digest, &len) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok) throw std::runtime_error("sha256: digest computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

inline std::string rfc3339_utc_now() {
    using std::chrono::system_clock;
    std::time_t now = system_clock::to_time_t(system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline OrderedJson audit_record_json(const AuditRecord& rec) {
    OrderedJson out;
    out["ts"] = rec.timestamp;
    out["digest"] = rec.digest;
    out["query"] = rec.query;
    out["decision"] = rec.decision;
    OrderedJson provs = OrderedJson::array();
    for (const AgentSet& p : rec.provenances) provs.push_back(p.members());
    out["provenances"] = std::move(provs);
    out["proof"] = rec.proof;
    return out;
}

/// Appends exactly one line to the log, creating the file if absent.
/// Throws std::runtime_error when the path is unwritable.
inline void audit_append(const std::string& log_path, const AuditRecord& rec) {
    std::ofstream out(log_path, std::ios::app | std::ios::binary);
    if (!out) throw std::runtime_error("cannot open audit log for append: " + log_path);
    out << audit_record_json(rec).dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("cannot write audit log: " + log_path);
}

} // namespace provauth

#endif // PROVAUTH_AUDIT_HPP
