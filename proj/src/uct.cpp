#include <chrono>
#include <cmath>

#include "mcplan/planners.hpp"

namespace mcplan {

namespace {

struct NoOpReturnObserver {
  void operator()(double) const {}
};

// Canonical MCTS: descend through the tree with the supplied in-tree
// selection rule, expand with the first state along the rollout that is new,
// finish the rollout with uniform actions, and back the reward-to-go up into
// every traversed in-tree (s, a) pair.
template <class Select, class OnReturn = NoOpReturnObserver>
ActionId mcts_plan(const GenerativeMdp& mdp, StateId s0, int horizon,
                   const Budget& budget, RandomSource& rng, SearchTree* tree_out,
                   ProbeAudit* audit, Select select, OnReturn on_return = {}) {
  SearchTree local;
  SearchTree& tree = tree_out ? *tree_out : local;
  auto root_actions = mdp.applicable_actions(s0);
  tree.find_or_insert({s0, 0}, root_actions.size(), NodeType::Internal);

  auto start = std::chrono::steady_clock::now();
  auto within = [&](std::uint64_t it) {
    if (budget.kind == Budget::Kind::Iterations) return it <= budget.iterations;
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    return ms < budget.deadline_ms;
  };

  struct Step {
    SearchNode* node;  // null outside the tree
    std::uint32_t action_index;
    double reward;
  };
  std::vector<Step> path;
  path.reserve(horizon);

  for (std::uint64_t it = 1; within(it); ++it) {
    if (audit) audit->probe_begin(it, -1);
    path.clear();
    StateId s = s0;
    bool in_tree = true;
    for (int d = 0; d < horizon; ++d) {
      auto acts = mdp.applicable_actions(s);
      SearchNode* node = nullptr;
      if (in_tree) {
        node = tree.find({s, d});
        if (!node) {
          node = &tree.insert({s, d}, acts.size(), NodeType::Internal);
          if (audit) audit->node_inserted({s, d}, NodeType::Internal);
          in_tree = false;  // expanded; uniform rollout from here on
        }
      }
      ActionId a;
      std::uint32_t ai = 0;
      if (in_tree) {
        a = select(*node, acts, rng);
        while (acts[ai] != a) ++ai;
      } else {
        ai = static_cast<std::uint32_t>(rng.next_index(acts.size()));
        a = acts[ai];
      }
      Transition t = mdp.step(s, a, rng);
      path.push_back({node, ai, t.reward});
      s = t.next;
    }
    double ret = 0.0;
    for (std::size_t i = path.size(); i-- > 0;) {
      ret += path[i].reward;
      if (path[i].node) {
        path[i].node->actions[path[i].action_index].add(ret);
        path[i].node->total += 1;
        if (audit)
          audit->action_update(
              path[i].node->key,
              mdp.applicable_actions(path[i].node->key.state)[path[i].action_index],
              ret);
      }
    }
    on_return(ret);
    if (audit) audit->probe_end(-1, false, horizon);
  }
  return recommend(tree.at({s0, 0}), root_actions, rng);
}

}  // namespace

ActionId plan_uct(const GenerativeMdp& mdp, StateId s0, int horizon,
                  const PlannerConfig& cfg, const Budget& budget,
                  RandomSource& rng, SearchTree* tree, ProbeAudit* audit) {
  if (cfg.exploration_c) {
    double c = *cfg.exploration_c;
    return mcts_plan(mdp, s0, horizon, budget, rng, tree, audit,
                     [c](const SearchNode& node, std::span<const ActionId> acts,
                         RandomSource& r) { return ucb1_select(node, acts, c, r); });
  }
  // No constant configured: use twice the empirical return range, estimated
  // over the first 100 rollouts and frozen afterwards.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::uint64_t seen = 0;
  auto select = [&](const SearchNode& node, std::span<const ActionId> acts,
                    RandomSource& r) {
    double c = (seen > 0 && hi > lo) ? 2.0 * (hi - lo) : 1.0;
    return ucb1_select(node, acts, c, r);
  };
  auto on_return = [&](double ret) {
    if (seen < 100) {
      lo = std::min(lo, ret);
      hi = std::max(hi, ret);
    }
    ++seen;
  };
  return mcts_plan(mdp, s0, horizon, budget, rng, tree, audit, select, on_return);
}

ActionId plan_epsilon_greedy(const GenerativeMdp& mdp, StateId s0, int horizon,
                             const PlannerConfig& cfg, const Budget& budget,
                             RandomSource& rng, SearchTree* tree,
                             ProbeAudit* audit) {
  double eps = cfg.epsilon;
  return mcts_plan(mdp, s0, horizon, budget, rng, tree, audit,
                   [eps](const SearchNode& node, std::span<const ActionId> acts,
                         RandomSource& r) {
                     return epsilon_greedy_select(node, acts, eps, r);
                   });
}

}  // namespace mcplan
