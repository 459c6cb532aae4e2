#pragma once

#include "mcplan/planners.hpp"

namespace mcplan {

// One reward sample into a policy's running statistics:
//   n += 1; delta = r - mean; mean += delta / n;
//   Var <- (Var*(n-2) + delta*(r - mean_new)) / (n-1), with Var = 0 at n <= 1.
// (Declared in tree.hpp; re-exported here next to its planner.)
using ::mcplan::update_policy_stats;

// Type-conversion decision for a candidate node. Computes over the full pool
// (retired policies included):
//   m  = sum n(s, pi)
//   EE = sum (n/m) Q(s, pi)
//   EV = sum (n/m) Var(s, pi)
//   VE = sum (n/m) (Q(s, pi) - EE)^2
// The pooled rule refuses when EV/m >= VE (within-policy variance scaled by
// the pooled sample count); the per-policy rule refuses unless
// VE > sum (n/m) (Var(s, pi) / n(s, pi)) (each variance scaled by its own
// count). The two disagree when per-policy counts differ.
// On conversion, each action a backed by at least one pool policy with
// pi(s, d) = a gets Q(s, a) and n(s, a) from the best such policy; other
// actions stay unvisited; the node becomes internal.
// Precondition: non-empty pool with at least one sampled policy.
bool brueic_convert(SearchNode& node, std::span<const ActionId> actions,
                    ConvertRule rule);

// The BRUE_IC search loop with its sub-routines exposed for audits: selective
// tree expansion where new nodes stay evaluation-phase candidates (leaves)
// until brueic_convert promotes them.
class BrueIcSearch {
 public:
  BrueIcSearch(const GenerativeMdp& mdp, StateId s0, int horizon,
               const PlannerConfig& cfg, RandomSource& rng, SearchTree& tree,
               ProbeAudit* audit = nullptr);

  void run(const Budget& budget);
  ActionId recommendation();

  // Sub-routines of the probe, public for direct fixture tests.
  bool end_of_probe(StateId s, int d, ProbeContext& ctx);
  double evaluate(StateId s, int d);
  ActionId select(StateId s, int d, const ProbeContext& ctx);
  void update(StateId s, int d, ActionId a, double r);

  void run_one_probe();
  ProbeContext& context() { return ctx_; }
  SearchTree& tree() { return tree_; }

 private:
  const GenerativeMdp& mdp_;
  StateId s0_;
  int horizon_;
  PlannerConfig cfg_;
  RandomSource& rng_;
  SearchTree& tree_;
  ProbeAudit* audit_;
  ProbeContext ctx_;
  std::uint64_t iteration_ = 0;
  int leaf_depth_ = 0;
};

}  // namespace mcplan
