#pragma once

#include <array>
#include <memory>
#include <unordered_map>
#include <vector>

#include "mcplan/config.hpp"
#include "mcplan/mdp.hpp"

namespace mcplan {

// ---------------------------------------------------------------------------
// Sailing: a boat on a width x height grid with a Markov wind. State packs
// (cell, wind direction); the 8 headings are N, NE, E, SE, S, SW, W, NW and
// sailing directly into the wind is inapplicable, leaving 7 actions. Movement
// is deterministic (clamped at the borders); only the wind is stochastic: it
// persists with p_stay, otherwise shifts to one of the two adjacent
// directions with equal probability. Each move costs cost_by_angle[d] where d
// is the angular distance between the heading and straight downwind; the goal
// cell is absorbing with reward 0 (wind frozen there).
// ---------------------------------------------------------------------------
struct SailingConfig {
  int width;
  int height;
  double p_stay;                       // wind persistence, in [0, 1]
  std::array<double, 4> cost_by_angle; // 0 = downwind ... 3 = near upwind
  int start_x, start_y;
  int start_wind;                      // wind direction the boat starts under
  int goal_x, goal_y;
  int horizon;
};

class SailingMdp final : public GenerativeMdp {
 public:
  explicit SailingMdp(const SailingConfig& cfg);

  StateId initial_state() const override { return s0_; }
  int horizon() const override { return cfg_.horizon; }
  std::span<const ActionId> applicable_actions(StateId s) const override;
  Transition step(StateId s, ActionId a, RandomSource& rng) const override;
  bool has_explicit_distribution() const override { return true; }
  std::vector<Outcome> outcome_distribution(StateId s, ActionId a) const override;
  bool is_absorbing(StateId s) const override;

  StateId encode(int x, int y, int wind) const;
  void decode(StateId s, int& x, int& y, int& wind) const;

 private:
  SailingConfig cfg_;
  StateId s0_;
  std::array<std::vector<ActionId>, 8> actions_by_wind_;
};

// ---------------------------------------------------------------------------
// Navigation: a grid walk from start to goal where entering column j kills
// the agent (absorbing, no further reward) with probability p_disappear[j].
// Actions are the in-grid 4-neighbour moves; every move pays step_reward and
// a surviving arrival at the goal additionally pays goal_reward, after which
// the goal is absorbing. The dead state and the goal state self-loop with
// reward 0 under every action.
// ---------------------------------------------------------------------------
struct NavigationConfig {
  int width;
  int height;
  std::vector<double> p_disappear;  // one entry per column
  int start_x, start_y;
  int goal_x, goal_y;
  double step_reward;  // typically negative
  double goal_reward;
  int horizon;
};

class NavigationMdp final : public GenerativeMdp {
 public:
  explicit NavigationMdp(const NavigationConfig& cfg);

  StateId initial_state() const override { return s0_; }
  int horizon() const override { return cfg_.horizon; }
  std::span<const ActionId> applicable_actions(StateId s) const override;
  Transition step(StateId s, ActionId a, RandomSource& rng) const override;
  bool has_explicit_distribution() const override { return true; }
  std::vector<Outcome> outcome_distribution(StateId s, ActionId a) const override;
  bool is_absorbing(StateId s) const override;

  StateId encode(int x, int y) const;
  StateId dead_state() const;
  StateId goal_state() const;

 private:
  NavigationConfig cfg_;
  StateId s0_;
  std::vector<std::vector<ActionId>> actions_by_cell_;
  std::vector<ActionId> absorbing_actions_;
};

// ---------------------------------------------------------------------------
// SysAdmin: n machines on an adjacency graph, state = bitmask of running
// machines. Action i < n reboots machine i (running next step with
// p_reboot_success); action n is a no-op. Every non-rebooted running machine
// stays up with (1 - p_fail) * (1 - p_infect)^(# down neighbours); down
// machines stay down. Reward of a transition is reward_per_running times the
// number of machines running in the successor state.
//
// Explicit distributions enumerate up to 2^n successors and are only served
// for n <= 12.
// ---------------------------------------------------------------------------
struct SysAdminConfig {
  int machines;
  std::vector<std::vector<int>> adjacency;  // per machine, sorted neighbours
  double p_fail;
  double p_infect;
  double p_reboot_success;
  double reward_per_running;
  int horizon;

  static std::vector<std::vector<int>> ring(int n);
  static std::vector<std::vector<int>> line(int n);
};

class SysAdminMdp final : public GenerativeMdp {
 public:
  static constexpr int kMaxExplicitMachines = 12;

  explicit SysAdminMdp(const SysAdminConfig& cfg);

  StateId initial_state() const override { return s0_; }  // all running
  int horizon() const override { return cfg_.horizon; }
  std::span<const ActionId> applicable_actions(StateId) const override;
  Transition step(StateId s, ActionId a, RandomSource& rng) const override;
  bool has_explicit_distribution() const override;
  std::vector<Outcome> outcome_distribution(StateId s, ActionId a) const override;

  ActionId noop_action() const { return static_cast<ActionId>(cfg_.machines); }

 private:
  double run_probability(StateId s, ActionId a, int machine) const;

  SysAdminConfig cfg_;
  StateId s0_;
  std::vector<ActionId> actions_;
};

// ---------------------------------------------------------------------------
// Tabular: an explicit MDP given as outcome lists per (state, action). Used
// for micro benchmark instances and oracle fixtures.
// ---------------------------------------------------------------------------
class TabularMdp final : public GenerativeMdp {
 public:
  TabularMdp(StateId initial, int horizon);

  // Outcomes must have non-negative probabilities summing to 1 within 1e-12.
  void add_action(StateId s, ActionId a, std::vector<Outcome> outcomes);

  StateId initial_state() const override { return s0_; }
  int horizon() const override { return horizon_; }
  std::span<const ActionId> applicable_actions(StateId s) const override;
  Transition step(StateId s, ActionId a, RandomSource& rng) const override;
  bool has_explicit_distribution() const override { return true; }
  std::vector<Outcome> outcome_distribution(StateId s, ActionId a) const override;

 private:
  struct Row {
    std::vector<ActionId> actions;
    std::vector<std::vector<Outcome>> outcomes;  // aligned with actions
  };
  const Row& row(StateId s) const;
  int action_index(const Row& r, ActionId a) const;

  StateId s0_;
  int horizon_;
  std::unordered_map<StateId, Row> rows_;
};

std::unique_ptr<GenerativeMdp> build_sailing(const SailingConfig& cfg);
std::unique_ptr<GenerativeMdp> build_navigation(const NavigationConfig& cfg);
std::unique_ptr<GenerativeMdp> build_sysadmin(const SysAdminConfig& cfg);

// Loads any of the four domain kinds from an instance file (kind = sailing |
// navigation | sysadmin | tabular).
std::unique_ptr<GenerativeMdp> load_domain(const std::string& path);
std::unique_ptr<GenerativeMdp> load_domain(const ConfigFile& cfg);

}  // namespace mcplan
