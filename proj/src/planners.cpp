#include "mcplan/planners.hpp"

#include <cmath>

#include "mcplan/brue_ic.hpp"

namespace mcplan {

PlannerKind planner_kind_from_string(const std::string& name) {
  if (name == "random") return PlannerKind::Random;
  if (name == "mab_uniform" || name == "mab-uniform") return PlannerKind::MabUniform;
  if (name == "epsilon_greedy" || name == "epsilon-greedy")
    return PlannerKind::EpsilonGreedy;
  if (name == "uct") return PlannerKind::Uct;
  if (name == "brue") return PlannerKind::Brue;
  if (name == "brue_i" || name == "brue-i") return PlannerKind::BrueI;
  if (name == "brue_ic" || name == "brue-ic") return PlannerKind::BrueIc;
  throw ConfigError("unknown planner kind '" + name + "'");
}

std::string planner_kind_name(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::Random: return "random";
    case PlannerKind::MabUniform: return "mab_uniform";
    case PlannerKind::EpsilonGreedy: return "epsilon_greedy";
    case PlannerKind::Uct: return "uct";
    case PlannerKind::Brue: return "brue";
    case PlannerKind::BrueI: return "brue_i";
    case PlannerKind::BrueIc: return "brue_ic";
  }
  return "?";
}

namespace {

ActionId pick_uniform(std::span<const ActionId> actions, RandomSource& rng) {
  return actions[rng.next_index(actions.size())];
}

// Uniform over the given index set; avoids an rng draw when unambiguous.
ActionId pick_among(std::span<const ActionId> actions,
                    const std::vector<std::uint32_t>& idx, RandomSource& rng) {
  if (idx.size() == 1) return actions[idx[0]];
  return actions[idx[rng.next_index(idx.size())]];
}

}  // namespace

ActionId greedy_action(const SearchNode* node, std::span<const ActionId> actions,
                       RandomSource& rng) {
  if (!node) return pick_uniform(actions, rng);
  std::vector<std::uint32_t> best;
  double best_q = -std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < node->actions.size(); ++i) {
    const ActionStats& st = node->actions[i];
    if (!st.visited()) continue;  // unvisited counts as -inf
    if (st.q > best_q) {
      best_q = st.q;
      best.assign(1, i);
    } else if (st.q == best_q) {
      best.push_back(i);
    }
  }
  if (best.empty()) return pick_uniform(actions, rng);
  return pick_among(actions, best, rng);
}

ActionId recommend(const SearchNode& root, std::span<const ActionId> actions,
                   RandomSource& rng) {
  return greedy_action(&root, actions, rng);
}

ActionId ucb1_select(const SearchNode& node, std::span<const ActionId> actions,
                     double c, RandomSource& rng) {
  for (std::uint32_t i = 0; i < node.actions.size(); ++i)
    if (!node.actions[i].visited()) return actions[i];

  double log_total = std::log(static_cast<double>(node.total));
  std::vector<std::uint32_t> best;
  double best_u = -std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < node.actions.size(); ++i) {
    const ActionStats& st = node.actions[i];
    double u = st.q + c * std::sqrt(log_total / static_cast<double>(st.n));
    if (u > best_u) {
      best_u = u;
      best.assign(1, i);
    } else if (u == best_u) {
      best.push_back(i);
    }
  }
  return pick_among(actions, best, rng);
}

ActionId epsilon_greedy_select(const SearchNode& node,
                               std::span<const ActionId> actions, double eps,
                               RandomSource& rng) {
  if (rng.next_bernoulli(eps)) return pick_uniform(actions, rng);
  // Greedy with unvisited actions preferred.
  std::vector<std::uint32_t> unvisited;
  for (std::uint32_t i = 0; i < node.actions.size(); ++i)
    if (!node.actions[i].visited()) unvisited.push_back(i);
  if (!unvisited.empty()) return pick_among(actions, unvisited, rng);
  return greedy_action(&node, actions, rng);
}

int brue_switch(std::uint64_t iteration, int horizon) {
  return horizon - static_cast<int>((iteration - 1) % static_cast<std::uint64_t>(horizon));
}

int brueic_switch(ProbeContext& ctx, int horizon) {
  if (ctx.retract || ctx.switch_depth == horizon)
    ctx.switch_depth = 0;
  else
    ctx.switch_depth += 1;
  ctx.retract = false;
  return ctx.switch_depth;
}

ActionId plan_random(const GenerativeMdp& mdp, StateId s0, RandomSource& rng) {
  return pick_uniform(mdp.applicable_actions(s0), rng);
}

ActionId plan_mab_uniform(const GenerativeMdp& mdp, StateId s0, int horizon,
                          const Budget& budget, RandomSource& rng,
                          SearchNode* out_root) {
  auto actions = mdp.applicable_actions(s0);
  SearchNode root({s0, 0}, actions.size(), NodeType::Internal);

  auto start = std::chrono::steady_clock::now();
  auto within = [&](std::uint64_t it) {
    if (budget.kind == Budget::Kind::Iterations) return it <= budget.iterations;
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    return ms < budget.deadline_ms;
  };

  for (std::uint64_t it = 1; within(it); ++it) {
    std::uint32_t k = static_cast<std::uint32_t>((it - 1) % actions.size());
    Transition t = mdp.step(s0, actions[k], rng);
    double ret = t.reward;
    StateId s = t.next;
    for (int d = 1; d < horizon; ++d) {
      auto acts = mdp.applicable_actions(s);
      Transition t2 = mdp.step(s, pick_uniform(acts, rng), rng);
      ret += t2.reward;
      s = t2.next;
    }
    root.actions[k].add(ret);
    root.total += 1;
  }
  if (out_root) *out_root = root;
  return recommend(root, actions, rng);
}

ActionId plan(const GenerativeMdp& mdp, StateId s0, int horizon,
              const PlannerConfig& cfg, const Budget& budget, RandomSource& rng,
              SearchTree* tree, ProbeAudit* audit) {
  switch (cfg.kind) {
    case PlannerKind::Random:
      return plan_random(mdp, s0, rng);
    case PlannerKind::MabUniform:
      return plan_mab_uniform(mdp, s0, horizon, budget, rng);
    case PlannerKind::EpsilonGreedy:
      return plan_epsilon_greedy(mdp, s0, horizon, cfg, budget, rng, tree, audit);
    case PlannerKind::Uct:
      return plan_uct(mdp, s0, horizon, cfg, budget, rng, tree, audit);
    case PlannerKind::Brue:
      return plan_brue(mdp, s0, horizon, budget, rng, tree, audit);
    case PlannerKind::BrueI:
      return plan_brue_i(mdp, s0, horizon, budget, rng, tree, audit);
    case PlannerKind::BrueIc:
      return plan_brue_ic(mdp, s0, horizon, cfg, budget, rng, tree, audit);
  }
  throw ConfigError("unhandled planner kind");
}

}  // namespace mcplan
