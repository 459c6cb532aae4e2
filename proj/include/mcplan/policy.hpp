#pragma once

#include <cstdint>
#include <unordered_map>

#include "mcplan/mdp.hpp"

namespace mcplan {

// Deterministic policy materialized on demand. The action at (state, depth)
// is a uniform draw from A(state) keyed by hash(seed, state, depth); repeated
// queries return the same action. The memo is bounded by the (state, depth)
// pairs actually queried; no eviction.
class LazyPolicy {
 public:
  LazyPolicy(const GenerativeMdp& mdp, std::uint64_t seed)
      : mdp_(&mdp), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  ActionId action_at(StateId s, int depth) const;

 private:
  struct Key {
    StateId state;
    int depth;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return static_cast<std::size_t>(
          hash_combine(k.state, static_cast<std::uint64_t>(k.depth)));
    }
  };

  const GenerativeMdp* mdp_;
  std::uint64_t seed_;
  mutable std::unordered_map<Key, ActionId, KeyHash> memo_;
};

LazyPolicy generate_random_policy(const GenerativeMdp& mdp,
                                  std::uint64_t seed);

// Runs the policy from (s, depth) to the given horizon and returns the
// accumulated undiscounted reward; depth == horizon returns 0.
double rollout_policy(const GenerativeMdp& mdp, const LazyPolicy& policy,
                      StateId s, int depth, int horizon, RandomSource& rng);

// Same, with the MDP's own horizon.
double execute_policy(const GenerativeMdp& mdp, const LazyPolicy& policy,
                      StateId s, int depth, RandomSource& rng);

}  // namespace mcplan
