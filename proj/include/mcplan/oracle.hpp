#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mcplan/mdp.hpp"

namespace mcplan {

// Exact optimal values over the states reachable from the initial state,
// computed by backward induction on steps-to-go h. V_0(s) = 0 everywhere and
// V_h(s) = max_a Q_h(s, a). Immutable after construction.
class ValueTables {
 public:
  int horizon() const { return horizon_; }
  const std::vector<StateId>& states() const { return states_; }

  bool covers(StateId s) const;
  double value(StateId s, int h) const;
  double q_value(StateId s, int h, ActionId a) const;
  std::vector<ActionId> optimal_actions(StateId s, int h) const;

  // One line per (state, h, action, Q) tuple, sorted; for debugging and
  // golden tests.
  void write_flat(std::ostream& os) const;

 private:
  friend ValueTables value_iteration(const GenerativeMdp&, int);

  int horizon_ = 0;
  std::vector<StateId> states_;                       // sorted
  std::unordered_map<StateId, std::uint32_t> index_;
  std::vector<std::vector<ActionId>> actions_;        // per state
  std::vector<std::uint32_t> action_offset_;          // per state, into q_
  std::vector<double> v_;                             // [h * n_states + i]
  std::vector<double> q_;                             // [h * n_qa + offset]
  std::uint32_t total_actions_ = 0;

  std::uint32_t state_index(StateId s) const;
};

// Expected value of a uniformly drawn depth-indexed deterministic policy,
// by backward induction with the action average in place of the max.
class UniformValueTables {
 public:
  int horizon() const { return horizon_; }
  double value(StateId s, int h) const;

 private:
  friend UniformValueTables uniform_policy_value(const GenerativeMdp&, int);

  int horizon_ = 0;
  std::vector<StateId> states_;
  std::unordered_map<StateId, std::uint32_t> index_;
  std::vector<double> v_;
};

// Both require explicit outcome distributions; CapabilityError otherwise.
ValueTables value_iteration(const GenerativeMdp& mdp, int horizon);
UniformValueTables uniform_policy_value(const GenerativeMdp& mdp, int horizon);

struct EnumeratedPolicy {
  std::vector<ActionId> choices;  // aligned with PolicyEnumeration::decision_points
  double value;                   // exact expected return from (s0, horizon)
};

struct PolicyEnumeration {
  std::vector<std::pair<StateId, int>> decision_points;  // (state, depth)
  std::vector<EnumeratedPolicy> policies;
};

// Brute-force enumeration of all deterministic depth-indexed policies on the
// reachable cone, each paired with its exactly evaluated expected return.
// CapabilityError if the policy count exceeds max_policies.
PolicyEnumeration enumerate_policies(const GenerativeMdp& mdp, int horizon,
                                     std::size_t max_policies = 1000000);

// V*_h(s0) - Q*_h(s0, a); >= 0 up to rounding. Throws std::out_of_range for
// uncovered queries.
double simple_regret(const ValueTables& tables, StateId s0, int horizon,
                     ActionId a);

}  // namespace mcplan
