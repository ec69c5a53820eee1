#ifndef PROVAUTH_DIAGNOSTICS_HPP
#define PROVAUTH_DIAGNOSTICS_HPP

#include <string>
#include <vector>

namespace provauth {

enum class Severity { Error, Warning };

enum class DiagCode {
    Syntax,
    MissingOwner,
    DuplicateOwner,
    UnknownAgent,
    NotInFragment,
    UnsafeRule,
    DepthExceeded,
    ArityMismatch,
    NonGroundFact,
    InertDue,
};

struct SourcePos {
    int line = 0;
    int column = 0;
};

struct Diagnostic {
    Severity severity = Severity::Error;
    DiagCode code = DiagCode::Syntax;
    std::string message;
    SourcePos pos;

    bool is_error() const { return severity == Severity::Error; }
};

inline const char* diag_code_name(DiagCode c) {
    switch (c) {
        case DiagCode::Syntax: return "syntax";
        case DiagCode::MissingOwner: return "missing-owner";
        case DiagCode::DuplicateOwner: return "duplicate-owner";
        case DiagCode::UnknownAgent: return "unknown-agent";
        case DiagCode::NotInFragment: return "not-in-fragment";
        case DiagCode::UnsafeRule: return "unsafe-rule";
        case DiagCode::DepthExceeded: return "depth-exceeded";
        case DiagCode::ArityMismatch: return "arity-mismatch";
        case DiagCode::NonGroundFact: return "non-ground-fact";
        case DiagCode::InertDue: return "inert-due";
    }
    return "unknown";
}

inline std::string format_diagnostic(const Diagnostic& d) {
    std::string out;
    out += (d.severity == Severity::Error) ? "error" : "warning";
    out += "[";
    out += diag_code_name(d.code);
    out += "]";
    if (d.pos.line > 0) {
        out += " at ";
        out += std::to_string(d.pos.line);
        out += ":";
        out += std::to_string(d.pos.column);
    }
    out += ": ";
    out += d.message;
    return out;
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.is_error()) return true;
    return false;
}

} // namespace provauth

#endif // PROVAUTH_DIAGNOSTICS_HPP
