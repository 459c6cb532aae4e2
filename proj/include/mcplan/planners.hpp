#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "mcplan/tree.hpp"

namespace mcplan {

enum class PlannerKind {
  Random,
  MabUniform,
  EpsilonGreedy,
  Uct,
  Brue,
  BrueI,
  BrueIc,
};

PlannerKind planner_kind_from_string(const std::string& name);
std::string planner_kind_name(PlannerKind kind);

enum class ConvertRule { Pooled, PerPolicy };

struct PlannerConfig {
  PlannerKind kind = PlannerKind::Brue;
  // UCT exploration constant; when unset it is auto-calibrated to twice the
  // empirical return range seen over the first 100 rollouts.
  std::optional<double> exploration_c;
  double epsilon = 0.1;          // epsilon-greedy
  std::uint32_t pool_bound = 10; // phi, active-pool bound (>= 1)
  double retire_threshold = 1e-4;  // psi (>= 0)
  ConvertRule convert_rule = ConvertRule::Pooled;
};

struct Budget {
  enum class Kind { Iterations, Deadline };
  Kind kind = Kind::Iterations;
  std::uint64_t iterations = 0;
  double deadline_ms = 0.0;

  static Budget iteration_count(std::uint64_t n) {
    return Budget{Kind::Iterations, n, 0.0};
  }
  static Budget deadline(double ms) { return Budget{Kind::Deadline, 0, ms}; }
};

// Per-probe mutable state of the MCTS2e loop. switch_depth is the depth whose
// node the probe updates; -1 is the dummy value that suppresses the update
// after a retract.
struct ProbeContext {
  int switch_depth = 0;
  bool retract = false;
  std::uint64_t iteration = 0;
};

// Optional observer for audits and the probe-trace log. Callbacks must not
// touch the planner's RandomSource.
struct ProbeAudit {
  virtual ~ProbeAudit() = default;
  virtual void probe_begin(std::uint64_t /*iteration*/, int /*switch_depth*/) {}
  virtual void probe_end(int /*final_switch_depth*/, bool /*retract*/,
                         int /*leaf_depth*/) {}
  virtual void action_update(NodeKey, ActionId, double /*reward*/) {}
  virtual void node_inserted(NodeKey, NodeType) {}
  virtual void node_converted(NodeKey) {}
  virtual void policy_evaluated(NodeKey, std::uint64_t /*policy_seed*/,
                                double /*ret*/, bool /*retired*/) {}
};

// Greedy choice over visited actions with uniform tie-break; uniform over all
// actions when nothing is visited. Shared by the estimation policies and the
// final recommendation rule.
ActionId greedy_action(const SearchNode* node, std::span<const ActionId> actions,
                       RandomSource& rng);

ActionId recommend(const SearchNode& root, std::span<const ActionId> actions,
                   RandomSource& rng);

// UCB1: any unvisited action first (in order), else
// argmax Q + c * sqrt(ln n(s) / n(s, a)) with uniform tie-break.
ActionId ucb1_select(const SearchNode& node, std::span<const ActionId> actions,
                     double c, RandomSource& rng);

// With probability eps uniform, else greedy; unvisited actions are
// greedy-preferred.
ActionId epsilon_greedy_select(const SearchNode& node,
                               std::span<const ActionId> actions, double eps,
                               RandomSource& rng);

// Round-robin switching point over [1, horizon]: H - ((n - 1) mod H).
int brue_switch(std::uint64_t iteration, int horizon);

// Fig-style incremental switch: 0 after a retract or a full sweep, else +1;
// clears the retract flag.
int brueic_switch(ProbeContext& ctx, int horizon);

// Planner entry points. `horizon` is the planning horizon from s0 (at most
// mdp.horizon()). A caller-owned tree can be passed for inspection; audits
// receive per-probe events.
ActionId plan_random(const GenerativeMdp& mdp, StateId s0, RandomSource& rng);

ActionId plan_mab_uniform(const GenerativeMdp& mdp, StateId s0, int horizon,
                          const Budget& budget, RandomSource& rng,
                          SearchNode* out_root = nullptr);

ActionId plan_uct(const GenerativeMdp& mdp, StateId s0, int horizon,
                  const PlannerConfig& cfg, const Budget& budget,
                  RandomSource& rng, SearchTree* tree = nullptr,
                  ProbeAudit* audit = nullptr);

ActionId plan_epsilon_greedy(const GenerativeMdp& mdp, StateId s0, int horizon,
                             const PlannerConfig& cfg, const Budget& budget,
                             RandomSource& rng, SearchTree* tree = nullptr,
                             ProbeAudit* audit = nullptr);

ActionId plan_brue(const GenerativeMdp& mdp, StateId s0, int horizon,
                   const Budget& budget, RandomSource& rng,
                   SearchTree* tree = nullptr, ProbeAudit* audit = nullptr);

ActionId plan_brue_i(const GenerativeMdp& mdp, StateId s0, int horizon,
                     const Budget& budget, RandomSource& rng,
                     SearchTree* tree = nullptr, ProbeAudit* audit = nullptr);

ActionId plan_brue_ic(const GenerativeMdp& mdp, StateId s0, int horizon,
                      const PlannerConfig& cfg, const Budget& budget,
                      RandomSource& rng, SearchTree* tree = nullptr,
                      ProbeAudit* audit = nullptr);

ActionId plan(const GenerativeMdp& mdp, StateId s0, int horizon,
              const PlannerConfig& cfg, const Budget& budget, RandomSource& rng,
              SearchTree* tree = nullptr, ProbeAudit* audit = nullptr);

}  // namespace mcplan
