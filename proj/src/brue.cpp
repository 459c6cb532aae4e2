#include <chrono>

#include "mcplan/planners.hpp"
#include "mcplan/probe.hpp"

namespace mcplan {

namespace {

// BRUE instantiation of MCTS2e. The switching point sigma in [1, H] from the
// round robin is translated to the depth it updates, sigma - 1: actions at
// depths <= switch_depth are drawn uniformly (exploration), deeper ones
// greedily (estimation), and the sample updates exactly the pair
// (s_{sigma-1}, a_sigma), whose action is the last uniformly drawn one.
struct BrueHooks {
  const GenerativeMdp& mdp;
  SearchTree& tree;
  RandomSource& rng;
  ProbeAudit* audit;
  int horizon;

  bool end_of_probe(StateId, int d, ProbeContext&) const { return d >= horizon; }

  double evaluate(StateId, int) const { return 0.0; }

  ActionId select(StateId s, int d, const ProbeContext& ctx) {
    auto acts = mdp.applicable_actions(s);
    if (d <= ctx.switch_depth) return acts[rng.next_index(acts.size())];
    return greedy_action(tree.find({s, d}), acts, rng);
  }

  void update(StateId s, int d, ActionId a, double r) {
    auto acts = mdp.applicable_actions(s);
    bool inserted = false;
    SearchNode& node =
        tree.find_or_insert({s, d}, acts.size(), NodeType::Internal, &inserted);
    if (inserted && audit) audit->node_inserted({s, d}, NodeType::Internal);
    std::uint32_t ai = 0;
    while (acts[ai] != a) ++ai;
    node.actions[ai].add(r);
    node.total += 1;
    if (audit) audit->action_update({s, d}, a, r);
  }
};

bool budget_allows(const Budget& budget, std::uint64_t it,
                   std::chrono::steady_clock::time_point start) {
  if (budget.kind == Budget::Kind::Iterations) return it <= budget.iterations;
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  return ms < budget.deadline_ms;
}

}  // namespace

ActionId plan_brue(const GenerativeMdp& mdp, StateId s0, int horizon,
                   const Budget& budget, RandomSource& rng, SearchTree* tree_out,
                   ProbeAudit* audit) {
  SearchTree local;
  SearchTree& tree = tree_out ? *tree_out : local;
  BrueHooks hooks{mdp, tree, rng, audit, horizon};

  auto start = std::chrono::steady_clock::now();
  for (std::uint64_t n = 1; budget_allows(budget, n, start); ++n) {
    ProbeContext ctx;
    ctx.iteration = n;
    ctx.switch_depth = brue_switch(n, horizon) - 1;
    if (audit) audit->probe_begin(n, ctx.switch_depth);
    mcts2e_probe(mdp, s0, 0, ctx, hooks, rng);
    if (audit) audit->probe_end(ctx.switch_depth, ctx.retract, horizon);
  }

  auto root_actions = mdp.applicable_actions(s0);
  const SearchNode* root = tree.find({s0, 0});
  return root ? recommend(*root, root_actions, rng)
              : root_actions[rng.next_index(root_actions.size())];
}

ActionId plan_brue_i(const GenerativeMdp& mdp, StateId s0, int horizon,
                     const Budget& budget, RandomSource& rng,
                     SearchTree* tree_out, ProbeAudit* audit) {
  SearchTree local;
  SearchTree& tree = tree_out ? *tree_out : local;

  struct Step {
    StateId state;
    std::uint32_t action_index;
    ActionId action;
    double reward;
  };
  std::vector<Step> path;
  path.reserve(horizon);

  auto start = std::chrono::steady_clock::now();
  for (std::uint64_t n = 1; budget_allows(budget, n, start); ++n) {
    int delta = brue_switch(n, horizon) - 1;
    if (audit) audit->probe_begin(n, delta);

    // Single rollout; the update/conversion target is the shallowest
    // (state, depth) not yet in the tree among depths <= delta, falling back
    // to depth delta when that whole prefix is already in the tree. The tree
    // therefore grows as one region connected to the root.
    path.clear();
    StateId s = s0;
    int target = -1;
    for (int d = 0; d < horizon; ++d) {
      if (target < 0 && d <= delta && tree.find({s, d}) == nullptr) target = d;
      auto acts = mdp.applicable_actions(s);
      std::uint32_t ai;
      if (d <= delta) {
        ai = static_cast<std::uint32_t>(rng.next_index(acts.size()));
      } else {
        ActionId a = greedy_action(tree.find({s, d}), acts, rng);
        ai = 0;
        while (acts[ai] != a) ++ai;
      }
      Transition t = mdp.step(s, acts[ai], rng);
      path.push_back({s, ai, acts[ai], t.reward});
      s = t.next;
    }
    if (target < 0) target = delta;

    double ret = 0.0;
    for (int d = horizon - 1; d >= target; --d) ret += path[d].reward;
    auto acts = mdp.applicable_actions(path[target].state);
    bool inserted = false;
    SearchNode& node = tree.find_or_insert({path[target].state, target},
                                           acts.size(), NodeType::Internal,
                                           &inserted);
    if (inserted && audit)
      audit->node_inserted({path[target].state, target}, NodeType::Internal);
    node.actions[path[target].action_index].add(ret);
    node.total += 1;
    if (audit)
      audit->action_update({path[target].state, target}, path[target].action, ret);
    if (audit) audit->probe_end(target, false, horizon);
  }

  auto root_actions = mdp.applicable_actions(s0);
  const SearchNode* root = tree.find({s0, 0});
  return root ? recommend(*root, root_actions, rng)
              : root_actions[rng.next_index(root_actions.size())];
}

}  // namespace mcplan
