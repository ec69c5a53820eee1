#ifndef PROVAUTH_PRETTY_HPP
#define PROVAUTH_PRETTY_HPP

/*
 * Canonical rendering of formulas. The output always re-parses to a
 * structurally equal tree:
 *
 *   =>  binds loosest and is non-associative (nested implications are
 *       parenthesized), "and" associates to the left, "not" and the modal
 *       prefixes bind tightest and take a unary operand.
 */

#include <string>

#include "provauth/core.hpp"

namespace provauth {

namespace detail {

inline void print_formula(const Formula& f, std::string& out);

// A unary-position operand: And/Implies need parentheses here.
inline void print_unary(const Formula& f, std::string& out) {
    switch (f.kind()) {
        case Formula::Kind::And:
        case Formula::Kind::Implies:
            out += "(";
            print_formula(f, out);
            out += ")";
            return;
        default:
            print_formula(f, out);
            return;
    }
}

// A conjunction-position operand: only Implies needs parentheses. And is
// fine here because "and" chains re-associate to the left.
inline void print_conj(const Formula& f, std::string& out) {
    if (f.kind() == Formula::Kind::Implies) {
        out += "(";
        print_formula(f, out);
        out += ")";
        return;
    }
    print_formula(f, out);
}

inline void print_formula(const Formula& f, std::string& out) {
    switch (f.kind()) {
        case Formula::Kind::Atom: {
            const Atom& a = f.as_atom();
            out += a.predicate;
            out += "(";
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                if (i) out += ", ";
                out += a.args[i].name;
            }
            out += ")";
            return;
        }
        case Formula::Kind::Not:
            out += "not ";
            print_unary(f.body(), out);
            return;
        case Formula::Kind::And:
            print_conj(f.lhs(), out);
            out += " and ";
            print_unary(f.rhs(), out);
            return;
        case Formula::Kind::Implies:
            print_conj(f.lhs(), out);
            out += " => ";
            print_conj(f.rhs(), out);
            return;
        case Formula::Kind::Believes:
            out += f.agent();
            out += " says ";
            print_unary(f.body(), out);
            return;
        case Formula::Kind::Due:
            out += "due ";
            out += f.agents().to_string();
            out += " ";
            print_unary(f.body(), out);
            return;
        case Formula::Kind::Trusts:
            out += f.truster();
            out += " trusts ";
            out += f.trustee();
            out += " on ";
            print_unary(f.body(), out);
            return;
    }
}

} // namespace detail

inline std::string pretty(const Formula& f) {
    std::string out;
    detail::print_formula(f, out);
    return out;
}

} // namespace provauth

#endif // PROVAUTH_PRETTY_HPP
