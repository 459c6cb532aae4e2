#pragma once

#include <memory>

#include "mcplan/domains.hpp"

namespace mcplan::testing {

// Deterministic single-chain MDP paying `reward` per step: one state, one
// action, self loop.
inline std::unique_ptr<TabularMdp> unit_chain(double reward, int horizon) {
  auto mdp = std::make_unique<TabularMdp>(0, horizon);
  mdp->add_action(0, 0, {{0, 1.0, reward}});
  return mdp;
}

// One state, two self-looping arms paying 1 and 0 deterministically.
inline std::unique_ptr<TabularMdp> two_arm_bandit(int horizon) {
  auto mdp = std::make_unique<TabularMdp>(0, horizon);
  mdp->add_action(0, 0, {{0, 1.0, 1.0}});
  mdp->add_action(0, 1, {{0, 1.0, 0.0}});
  return mdp;
}

// Two-outcome coin: single state/action, reward +1 or 0 with p = 1/2.
inline std::unique_ptr<TabularMdp> coin_flip(int horizon) {
  auto mdp = std::make_unique<TabularMdp>(0, horizon);
  mdp->add_action(0, 0, {{0, 0.5, 1.0}, {0, 0.5, 0.0}});
  return mdp;
}

// All policies share the same expected value but outcomes are noisy: the
// reward of every (state, action) is +1 or -1 with equal probability,
// resolved through the successor state, independent of the action taken.
inline std::unique_ptr<TabularMdp> noise_lottery(int n_actions, int horizon) {
  auto mdp = std::make_unique<TabularMdp>(0, horizon);
  for (StateId s = 0; s <= 1; ++s) {
    for (ActionId a = 0; a < n_actions; ++a)
      mdp->add_action(s, a, {{0, 0.5, -1.0}, {1, 0.5, 1.0}});
  }
  return mdp;
}

// Deterministic spread: two arms from the start leading to distinct states
// that repeat the same choice structure; arm 0 pays 1 per step, arm 1 pays 0.
inline std::unique_ptr<TabularMdp> deterministic_spread(int horizon) {
  auto mdp = std::make_unique<TabularMdp>(0, horizon);
  for (StateId s : {StateId{0}, StateId{1}, StateId{2}}) {
    mdp->add_action(s, 0, {{1, 1.0, 1.0}});
    mdp->add_action(s, 1, {{2, 1.0, 0.0}});
  }
  return mdp;
}

// Micro MDPs for cross-oracle checks: small enough to enumerate all
// depth-indexed policies. Seeded structural variety.
inline std::unique_ptr<TabularMdp> micro_mdp(int variant) {
  switch (variant) {
    case 0: {
      // 2 states, 2 actions, stochastic loop.
      auto m = std::make_unique<TabularMdp>(0, 3);
      m->add_action(0, 0, {{0, 0.5, 1.0}, {1, 0.5, 0.0}});
      m->add_action(0, 1, {{1, 1.0, 0.5}});
      m->add_action(1, 0, {{0, 0.7, -0.5}, {1, 0.3, 2.0}});
      m->add_action(1, 1, {{1, 1.0, 0.25}});
      return m;
    }
    case 1: {
      // Deterministic 3-chain with a shortcut.
      auto m = std::make_unique<TabularMdp>(0, 3);
      m->add_action(0, 0, {{1, 1.0, 0.0}});
      m->add_action(0, 1, {{2, 1.0, 1.0}});
      m->add_action(1, 0, {{2, 1.0, 3.0}});
      m->add_action(2, 0, {{2, 1.0, 0.5}});
      return m;
    }
    case 2: {
      // Coin-flip row with asymmetric arms.
      auto m = std::make_unique<TabularMdp>(0, 4);
      m->add_action(0, 0, {{0, 0.9, 0.1}, {1, 0.1, -1.0}});
      m->add_action(0, 1, {{1, 1.0, 0.3}});
      m->add_action(1, 0, {{1, 1.0, 0.0}});
      return m;
    }
    case 3: {
      // Three states, mixed branching.
      auto m = std::make_unique<TabularMdp>(0, 3);
      m->add_action(0, 0, {{1, 0.4, 1.0}, {2, 0.6, 0.0}});
      m->add_action(0, 1, {{2, 1.0, 0.2}});
      m->add_action(1, 0, {{2, 1.0, 1.5}});
      m->add_action(1, 1, {{1, 1.0, -0.25}});
      m->add_action(2, 0, {{2, 0.5, 0.6}, {1, 0.5, -0.1}});
      return m;
    }
    default: {
      // Negative-reward absorbing trap vs safe loop.
      auto m = std::make_unique<TabularMdp>(0, 4);
      m->add_action(0, 0, {{1, 0.3, 4.0}, {0, 0.7, -1.0}});
      m->add_action(0, 1, {{0, 1.0, 0.1}});
      m->add_action(1, 0, {{1, 1.0, 0.0}});
      return m;
    }
  }
}

constexpr int kMicroMdpCount = 5;

}  // namespace mcplan::testing
