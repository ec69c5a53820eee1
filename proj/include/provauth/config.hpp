#ifndef PROVAUTH_CONFIG_HPP
#define PROVAUTH_CONFIG_HPP

namespace provauth {

inline constexpr int kDefaultDepthBound = 3;
inline constexpr int kDefaultMaxRounds = 10000;

struct EngineConfig {
    int depth_bound = kDefaultDepthBound;  // must be >= 1
    int max_rounds = kDefaultMaxRounds;    // safety valve for the fixpoint loop
};

} // namespace provauth

#endif // PROVAUTH_CONFIG_HPP
