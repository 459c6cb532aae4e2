#include "mcplan/policy.hpp"

#include <cassert>

namespace mcplan {

ActionId LazyPolicy::action_at(StateId s, int depth) const {
  Key key{s, depth};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  auto acts = mdp_->applicable_actions(s);
  std::uint64_t h = hash_combine(hash_combine(seed_, s),
                                 static_cast<std::uint64_t>(depth));
  std::uint64_t idx = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(h) * acts.size()) >> 64);
  ActionId a = acts[idx];
  memo_.emplace(key, a);
  return a;
}

LazyPolicy generate_random_policy(const GenerativeMdp& mdp,
                                  std::uint64_t seed) {
  return LazyPolicy(mdp, seed);
}

double rollout_policy(const GenerativeMdp& mdp, const LazyPolicy& policy,
                      StateId s, int depth, int horizon, RandomSource& rng) {
  double total = 0.0;
  for (int t = depth; t < horizon; ++t) {
    ActionId a = policy.action_at(s, t);
    assert(action_applicable(mdp, s, a));
    Transition tr = mdp.step(s, a, rng);
    total += tr.reward;
    s = tr.next;
  }
  return total;
}

double execute_policy(const GenerativeMdp& mdp, const LazyPolicy& policy,
                      StateId s, int depth, RandomSource& rng) {
  return rollout_policy(mdp, policy, s, depth, mdp.horizon(), rng);
}

}  // namespace mcplan
