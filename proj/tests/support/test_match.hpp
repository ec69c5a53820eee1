#ifndef PROVAUTH_TESTS_SUPPORT_TEST_MATCH_HPP
#define PROVAUTH_TESTS_SUPPORT_TEST_MATCH_HPP

// Test-side structural matcher, written independently of the engine's
// matching path. Extends `sub` so that pattern@sub equals ground; only
// term positions may vary.

#include "provauth/core.hpp"

namespace testsupport {

inline bool pattern_match(const provauth::Formula& pattern, const provauth::Formula& ground,
                          provauth::Substitution& sub) {
    using provauth::Formula;
    using provauth::Term;
    if (pattern.kind() != ground.kind()) return false;
    switch (pattern.kind()) {
        case Formula::Kind::Atom: {
            const auto& p = pattern.as_atom();
            const auto& g = ground.as_atom();
            if (p.predicate != g.predicate || p.args.size() != g.args.size()) return false;
            for (std::size_t i = 0; i < p.args.size(); ++i) {
                if (p.args[i].is_variable()) {
                    if (const Term* bound = sub.lookup(p.args[i].name)) {
                        if (!(*bound == g.args[i])) return false;
                    } else if (g.args[i].is_variable()) {
                        return false;
                    } else {
                        sub.bind(p.args[i].name, g.args[i]);
                    }
                } else if (!(p.args[i] == g.args[i])) {
                    return false;
                }
            }
            return true;
        }
        case Formula::Kind::Not:
            return pattern_match(pattern.body(), ground.body(), sub);
        case Formula::Kind::And:
        case Formula::Kind::Implies:
            return pattern_match(pattern.lhs(), ground.lhs(), sub) &&
                   pattern_match(pattern.rhs(), ground.rhs(), sub);
        case Formula::Kind::Believes:
            return pattern.agent() == ground.agent() &&
                   pattern_match(pattern.body(), ground.body(), sub);
        case Formula::Kind::Due:
            return pattern.agents() == ground.agents() &&
                   pattern_match(pattern.body(), ground.body(), sub);
        case Formula::Kind::Trusts:
            return pattern.truster() == ground.truster() &&
                   pattern.trustee() == ground.trustee() &&
                   pattern_match(pattern.body(), ground.body(), sub);
    }
    return false;
}

} // namespace testsupport

#endif
