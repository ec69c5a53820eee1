#ifndef PROVAUTH_PARSER_HPP
#define PROVAUTH_PARSER_HPP

/*
 * Surface syntax for policy bases and queries.
 *
 *   Policy    ::= Item*
 *   Item      ::= 'owner' Ident ';' | 'agent' Ident (',' Ident)* ';' | Formula ';'
 *   Formula   ::= Conj ('=>' Conj)?
 *   Conj      ::= Unary ('and' Unary)*
 *   Unary     ::= 'not' Unary | Modal | Atom | '(' Formula ')'
 *   Modal     ::= Ident 'says' Unary
 *               | Ident 'denies' Unary            (sugar for: says not)
 *               | Ident 'trusts' Ident 'on' Unary
 *               | 'due' '{' Ident (',' Ident)* '}' Unary
 *   Atom      ::= Ident '(' (TermId (',' TermId)*)? ')'
 *   TermId    ::= Ident                           (uppercase-initial means a variable)
 *
 * '#' starts a comment that runs to the end of the line. Agents must be
 * declared before they are used; the owner must be declared before the
 * first statement.
 */

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "provauth/core.hpp"
#include "provauth/diagnostics.hpp"
#include "provauth/statement.hpp"

namespace provauth {

struct PolicyParse {
    std::optional<PolicyBase> base;  // present iff no error diagnostics
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return base.has_value(); }
};

struct FormulaParse {
    std::optional<Formula> formula;
    std::optional<Diagnostic> error;

    bool ok() const { return formula.has_value(); }
};

namespace detail {

enum class Tok {
    Ident, LParen, RParen, LBrace, RBrace, Comma, Semicolon, Arrow,
    KwOwner, KwAgent, KwSays, KwDenies, KwTrusts, KwOn, KwDue, KwNot, KwAnd,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourcePos pos;
};

inline const char* token_name(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Comma: return "','";
        case Tok::Semicolon: return "';'";
        case Tok::Arrow: return "'=>'";
        case Tok::KwOwner: return "'owner'";
        case Tok::KwAgent: return "'agent'";
        case Tok::KwSays: return "'says'";
        case Tok::KwDenies: return "'denies'";
        case Tok::KwTrusts: return "'trusts'";
        case Tok::KwOn: return "'on'";
        case Tok::KwDue: return "'due'";
        case Tok::KwNot: return "'not'";
        case Tok::KwAnd: return "'and'";
        case Tok::End: return "end of input";
    }
    return "?";
}

struct LexError {
    std::string message;
    SourcePos pos;
};

inline std::optional<Tok> keyword_token(std::string_view ident) {
    if (ident == "owner") return Tok::KwOwner;
    if (ident == "agent") return Tok::KwAgent;
    if (ident == "says") return Tok::KwSays;
    if (ident == "denies") return Tok::KwDenies;
    if (ident == "trusts") return Tok::KwTrusts;
    if (ident == "on") return Tok::KwOn;
    if (ident == "due") return Tok::KwDue;
    if (ident == "not") return Tok::KwNot;
    if (ident == "and") return Tok::KwAnd;
    return std::nullopt;
}

inline std::vector<Token> lex(std::string_view src, std::vector<LexError>& errors) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i + k] == '\n') { ++line; col = 1; } else { ++col; }
        }
        i += n;
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            std::size_t j = i;
            while (j < src.size() && src[j] != '\n') ++j;
            advance(j - i);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) { advance(1); continue; }
        SourcePos pos{line, col};
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            std::string ident(src.substr(i, j - i));
            advance(j - i);
            if (auto kw = keyword_token(ident))
                out.push_back({*kw, std::move(ident), pos});
            else
                out.push_back({Tok::Ident, std::move(ident), pos});
            continue;
        }
        switch (c) {
            case '(': out.push_back({Tok::LParen, "(", pos}); advance(1); continue;
            case ')': out.push_back({Tok::RParen, ")", pos}); advance(1); continue;
            case '{': out.push_back({Tok::LBrace, "{", pos}); advance(1); continue;
            case '}': out.push_back({Tok::RBrace, "}", pos}); advance(1); continue;
            case ',': out.push_back({Tok::Comma, ",", pos}); advance(1); continue;
            case ';': out.push_back({Tok::Semicolon, ";", pos}); advance(1); continue;
            case '=':
                if (i + 1 < src.size() && src[i + 1] == '>') {
                    out.push_back({Tok::Arrow, "=>", pos});
                    advance(2);
                    continue;
                }
                [[fallthrough]];
            default:
                errors.push_back({std::string("unexpected character '") + c + "'", pos});
                advance(1);
                continue;
        }
    }
    out.push_back({Tok::End, "", {line, col}});
    return out;
}

struct ParseError {
    Diagnostic diag;
};

class FormulaParser {
public:
    FormulaParser(const std::vector<Token>& tokens, std::size_t& cursor,
                  const AgentSet* registry, std::vector<Diagnostic>* agent_diags)
        : tokens_(tokens), cursor_(cursor), registry_(registry), agent_diags_(agent_diags) {}

    Formula parse_formula() {
        Formula lhs = parse_conj();
        if (peek().kind == Tok::Arrow) {
            next();
            Formula rhs = parse_conj();
            return Formula::implication(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t k = cursor_ + ahead;
        return k < tokens_.size() ? tokens_[k] : tokens_.back();
    }
    const Token& next() { return tokens_[cursor_ < tokens_.size() - 1 ? cursor_++ : cursor_]; }

    [[noreturn]] void fail(const std::string& message, SourcePos pos) {
        throw ParseError{Diagnostic{Severity::Error, DiagCode::Syntax, message, pos}};
    }

    Token expect(Tok kind) {
        if (peek().kind != kind)
            fail(std::string("expected ") + token_name(kind) + ", found " + token_name(peek().kind),
                 peek().pos);
        return next();
    }

    Agent agent_name() {
        Token t = expect(Tok::Ident);
        if (registry_ && !registry_->contains(t.text) && agent_diags_)
            agent_diags_->push_back(Diagnostic{Severity::Error, DiagCode::UnknownAgent,
                                               "agent '" + t.text + "' is not declared", t.pos});
        return t.text;
    }

    Formula parse_conj() {
        Formula f = parse_unary();
        while (peek().kind == Tok::KwAnd) {
            next();
            Formula rhs = parse_unary();
            f = Formula::conjunction(std::move(f), std::move(rhs));
        }
        return f;
    }

    Formula parse_unary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::KwNot:
                next();
                return Formula::negation(parse_unary());
            case Tok::KwDue: {
                next();
                expect(Tok::LBrace);
                std::vector<Agent> members;
                members.push_back(agent_name());
                while (peek().kind == Tok::Comma) {
                    next();
                    members.push_back(agent_name());
                }
                expect(Tok::RBrace);
                Formula body = parse_unary();
                return Formula::due(AgentSet(std::move(members)), std::move(body));
            }
            case Tok::LParen: {
                next();
                Formula f = parse_formula();
                expect(Tok::RParen);
                return f;
            }
            case Tok::Ident:
                return parse_ident_lead();
            default:
                fail(std::string("expected a formula, found ") + token_name(t.kind), t.pos);
        }
    }

    Formula parse_ident_lead() {
        // Ident followed by '(' is an atom; followed by a modal keyword it
        // names an agent.
        const Token& after = peek(1);
        switch (after.kind) {
            case Tok::LParen: {
                Token name = next();
                next();  // '('
                std::vector<Term> args;
                if (peek().kind != Tok::RParen) {
                    args.push_back(term_id());
                    while (peek().kind == Tok::Comma) {
                        next();
                        args.push_back(term_id());
                    }
                }
                expect(Tok::RParen);
                return Formula::atom(name.text, std::move(args));
            }
            case Tok::KwSays: {
                Agent a = agent_name();
                next();  // 'says'
                return Formula::believes(std::move(a), parse_unary());
            }
            case Tok::KwDenies: {
                Agent a = agent_name();
                next();  // 'denies'
                return Formula::believes(std::move(a), Formula::negation(parse_unary()));
            }
            case Tok::KwTrusts: {
                Agent truster = agent_name();
                next();  // 'trusts'
                Agent trustee = agent_name();
                expect(Tok::KwOn);
                return Formula::trusts(std::move(truster), std::move(trustee), parse_unary());
            }
            default:
                fail("expected '(' or 'says'/'denies'/'trusts' after identifier '" + peek().text + "'",
                     after.pos);
        }
    }

    Term term_id() {
        Token t = expect(Tok::Ident);
        if (std::isupper(static_cast<unsigned char>(t.text[0])))
            return Term::variable(t.text);
        return Term::constant(t.text);
    }

    const std::vector<Token>& tokens_;
    std::size_t& cursor_;
    const AgentSet* registry_;
    std::vector<Diagnostic>* agent_diags_;
};

} // namespace detail

/// Parses a single formula (query syntax). Agent names are not checked
/// against any registry and variables are allowed.
inline FormulaParse parse_formula(std::string_view text) {
    std::vector<detail::LexError> lex_errors;
    std::vector<detail::Token> tokens = detail::lex(text, lex_errors);
    if (!lex_errors.empty())
        return {std::nullopt,
                Diagnostic{Severity::Error, DiagCode::Syntax, lex_errors.front().message,
                           lex_errors.front().pos}};
    std::size_t cursor = 0;
    try {
        detail::FormulaParser p(tokens, cursor, nullptr, nullptr);
        Formula f = p.parse_formula();
        if (tokens[cursor].kind != detail::Tok::End) {
            const detail::Token& t = tokens[cursor];
            return {std::nullopt,
                    Diagnostic{Severity::Error, DiagCode::Syntax,
                               std::string("unexpected ") + detail::token_name(t.kind) +
                                   " after formula",
                               t.pos}};
        }
        return {f, std::nullopt};
    } catch (const detail::ParseError& e) {
        return {std::nullopt, e.diag};
    }
}

/// Parses a whole policy file: owner/agent declarations plus statements,
/// each normalized into the statement fragment. On errors the diagnostics
/// carry source positions and the base is absent.
inline PolicyParse parse_policy(std::string_view text, int depth_bound = kDefaultDepthBound) {
    std::vector<Diagnostic> diags;
    std::vector<detail::LexError> lex_errors;
    std::vector<detail::Token> tokens = detail::lex(text, lex_errors);
    for (const auto& e : lex_errors)
        diags.push_back(Diagnostic{Severity::Error, DiagCode::Syntax, e.message, e.pos});

    PolicyBase base;
    bool have_owner = false;
    std::size_t cursor = 0;

    auto skip_to_semicolon = [&] {
        while (tokens[cursor].kind != detail::Tok::Semicolon &&
               tokens[cursor].kind != detail::Tok::End)
            ++cursor;
        if (tokens[cursor].kind == detail::Tok::Semicolon) ++cursor;
    };

    while (tokens[cursor].kind != detail::Tok::End) {
        const detail::Token& t = tokens[cursor];
        try {
            if (t.kind == detail::Tok::KwOwner) {
                ++cursor;
                if (tokens[cursor].kind != detail::Tok::Ident)
                    throw detail::ParseError{Diagnostic{Severity::Error, DiagCode::Syntax,
                                                        "expected agent name after 'owner'",
                                                        tokens[cursor].pos}};
                if (have_owner) {
                    diags.push_back(Diagnostic{Severity::Error, DiagCode::DuplicateOwner,
                                               "duplicate owner declaration", t.pos});
                } else {
                    base.owner = tokens[cursor].text;
                    base.registry.insert(base.owner);
                    have_owner = true;
                }
                ++cursor;
                if (tokens[cursor].kind != detail::Tok::Semicolon)
                    throw detail::ParseError{Diagnostic{Severity::Error, DiagCode::Syntax,
                                                        "expected ';' after owner declaration",
                                                        tokens[cursor].pos}};
                ++cursor;
            } else if (t.kind == detail::Tok::KwAgent) {
                ++cursor;
                while (true) {
                    if (tokens[cursor].kind != detail::Tok::Ident)
                        throw detail::ParseError{Diagnostic{Severity::Error, DiagCode::Syntax,
                                                            "expected agent name",
                                                            tokens[cursor].pos}};
                    base.registry.insert(tokens[cursor].text);
                    ++cursor;
                    if (tokens[cursor].kind == detail::Tok::Comma) {
                        ++cursor;
                        continue;
                    }
                    break;
                }
                if (tokens[cursor].kind != detail::Tok::Semicolon)
                    throw detail::ParseError{Diagnostic{Severity::Error, DiagCode::Syntax,
                                                        "expected ';' after agent declaration",
                                                        tokens[cursor].pos}};
                ++cursor;
            } else {
                SourcePos stmt_pos = t.pos;
                if (!have_owner)
                    throw detail::ParseError{Diagnostic{
                        Severity::Error, DiagCode::MissingOwner,
                        "the owner must be declared before the first statement", stmt_pos}};
                std::vector<Diagnostic> agent_diags;
                detail::FormulaParser p(tokens, cursor, &base.registry, &agent_diags);
                Formula f = p.parse_formula();
                if (tokens[cursor].kind != detail::Tok::Semicolon)
                    throw detail::ParseError{Diagnostic{Severity::Error, DiagCode::Syntax,
                                                        "expected ';' after statement",
                                                        tokens[cursor].pos}};
                ++cursor;
                if (!agent_diags.empty()) {
                    for (auto& d : agent_diags) diags.push_back(std::move(d));
                    continue;
                }
                NormalizeResult n = normalize(f, base.owner, depth_bound);
                if (!n.ok()) {
                    Diagnostic d = *n.error;
                    d.pos = stmt_pos;
                    diags.push_back(std::move(d));
                    continue;
                }
                n.statement->pos = stmt_pos;
                base.statements.push_back(std::move(*n.statement));
            }
        } catch (const detail::ParseError& e) {
            diags.push_back(e.diag);
            skip_to_semicolon();
        }
    }

    bool owner_diag_present = false;
    for (const auto& d : diags)
        if (d.code == DiagCode::MissingOwner) owner_diag_present = true;
    if (!have_owner && !owner_diag_present)
        diags.push_back(Diagnostic{Severity::Error, DiagCode::MissingOwner,
                                   "missing owner declaration", tokens.back().pos});

    if (has_errors(diags)) return {std::nullopt, std::move(diags)};
    return {std::move(base), std::move(diags)};
}

} // namespace provauth

#endif // PROVAUTH_PARSER_HPP
