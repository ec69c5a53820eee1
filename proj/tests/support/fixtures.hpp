#ifndef PROVAUTH_TESTS_SUPPORT_FIXTURES_HPP
#define PROVAUTH_TESTS_SUPPORT_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "provauth/parser.hpp"

namespace testsupport {

inline provauth::PolicyBase parse_or_die(const std::string& text,
                                         int depth_bound = provauth::kDefaultDepthBound) {
    provauth::PolicyParse parsed = provauth::parse_policy(text, depth_bound);
    if (!parsed.ok()) {
        std::string message = "fixture policy failed to parse:";
        for (const auto& d : parsed.diagnostics) message += "\n  " + provauth::format_diagnostic(d);
        throw std::runtime_error(message);
    }
    return std::move(*parsed.base);
}

inline std::string read_file_or_die(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read fixture file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Workplace access: two trustees vouch for the same attribute; the due
// guards keep the channels apart.
inline const char* kCorporatePolicy = R"(
owner Company;
agent Company, HR, Manager, Alice;
Company trusts HR on clerk(alice);
Company trusts Manager on clerk(alice);
due {HR} Company says clerk(alice) => Company says access(printers);
due {Manager} Company says clerk(alice) => Company says access(computers);
Manager says clerk(alice);
)";

// Subjective attribute: Bob and Cathy may disagree about david. The
// credentials are kept separate so tests can flip the two opinions.
inline const char* kPeersRules = R"(
owner Alice;
agent Alice, Bob, Cathy, David;
Alice trusts Bob on goodPeer(david);
Alice trusts Bob on not goodPeer(david);
Alice trusts Cathy on goodPeer(david);
Alice trusts Cathy on not goodPeer(david);
due {Bob} Alice says goodPeer(david) and due {Cathy} Alice says goodPeer(david) => Alice says canAccess(david, dir);
due {Bob} Alice says goodPeer(david) and due {Cathy} Alice says not goodPeer(david) => Alice says canAccess(david, subdir1);
due {Bob} Alice says not goodPeer(david) and due {Cathy} Alice says goodPeer(david) => Alice says canAccess(david, subdir2);
)";

inline const char* kBobApproves = "Bob says goodPeer(david);\n";
inline const char* kBobRejects = "Bob denies goodPeer(david);\n";
inline const char* kCathyApproves = "Cathy says goodPeer(david);\n";
inline const char* kCathyRejects = "Cathy denies goodPeer(david);\n";

inline const std::string kPeersPolicy =
    std::string(kPeersRules) + kBobApproves + kCathyRejects;

// Incomplete information: the screening unit certifies only what it does
// not believe. Without a certificate, the rules stay silent.
inline const char* kAirportRules = R"(
owner LOCAL;
agent LOCAL, SU;
LOCAL trusts SU on not SU says not terrorist(X);
LOCAL trusts SU on not SU says terrorist(X);
due {SU} LOCAL says not SU says not terrorist(X) => LOCAL says not Permit(X, board);
due {SU} LOCAL says not SU says terrorist(X) => LOCAL says Permit(X, board);
)";

inline const char* kClearanceCertificate = "not SU says terrorist(dave);\n";
inline const char* kSuspicionCertificate = "not SU says not terrorist(dave);\n";

// Two delegation chains for the same conclusion.
inline const char* kDeletefilePolicy = R"(
owner Alice;
agent Alice, Bob, Charlie;
Alice trusts Bob on deletefile();
Bob says deletefile();
Alice trusts Charlie on deletefile();
Charlie says deletefile();
)";

} // namespace testsupport

#endif
