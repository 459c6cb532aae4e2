#include <chrono>

#include "mcplan/brue_ic.hpp"
#include "mcplan/probe.hpp"

namespace mcplan {

bool brueic_convert(SearchNode& node, std::span<const ActionId> actions,
                    ConvertRule rule) {
  if (node.pool.empty())
    throw ContractViolation("conversion attempted on an empty policy pool");

  double m = 0.0;
  for (const PolicyStats& ps : node.pool) m += static_cast<double>(ps.n);
  if (m <= 0.0)
    throw ContractViolation("conversion attempted with no sampled policy");

  double ee = 0.0, ev = 0.0;
  for (const PolicyStats& ps : node.pool) {
    double w = static_cast<double>(ps.n) / m;
    ee += w * ps.mean;
    ev += w * ps.variance();
  }
  double ve = 0.0;
  for (const PolicyStats& ps : node.pool) {
    double w = static_cast<double>(ps.n) / m;
    ve += w * (ps.mean - ee) * (ps.mean - ee);
  }

  bool refuse;
  if (rule == ConvertRule::Pooled) {
    refuse = ev / m >= ve;
  } else {
    // Per-policy variant: compare VE against the mean estimator variance
    // E[Var(s, pi) / n(s, pi)].
    double mean_est_var = 0.0;
    for (const PolicyStats& ps : node.pool) {
      double w = static_cast<double>(ps.n) / m;
      mean_est_var += w * (ps.variance() / static_cast<double>(ps.n));
    }
    refuse = !(ve > mean_est_var);
  }
  if (refuse) return false;

  // Initialize the node variables from the best policy behind each action;
  // actions with no associated policy stay unvisited.
  node.total = 0;
  for (std::uint32_t ai = 0; ai < actions.size(); ++ai) {
    const PolicyStats* best = nullptr;
    for (const PolicyStats& ps : node.pool) {
      if (ps.n == 0) continue;
      if (ps.policy.action_at(node.key.state, node.key.depth) != actions[ai])
        continue;
      if (!best || ps.mean > best->mean) best = &ps;
    }
    if (best) {
      node.actions[ai].n = best->n;
      node.actions[ai].q = best->mean;
      node.total += best->n;
    }
  }
  node.type = NodeType::Internal;
  return true;
}

BrueIcSearch::BrueIcSearch(const GenerativeMdp& mdp, StateId s0, int horizon,
                           const PlannerConfig& cfg, RandomSource& rng,
                           SearchTree& tree, ProbeAudit* audit)
    : mdp_(mdp),
      s0_(s0),
      horizon_(horizon),
      cfg_(cfg),
      rng_(rng),
      tree_(tree),
      audit_(audit) {
  if (cfg_.pool_bound < 1) throw ConfigError("pool bound phi must be >= 1");
  if (cfg_.retire_threshold < 0.0)
    throw ConfigError("retirement threshold psi must be >= 0");
  tree_.find_or_insert({s0, 0}, mdp.applicable_actions(s0).size(),
                       NodeType::Candidate);
  ctx_.switch_depth = 0;
  ctx_.retract = false;
}

bool BrueIcSearch::end_of_probe(StateId s, int d, ProbeContext& ctx) {
  if (d >= horizon_) {
    leaf_depth_ = d;
    return true;
  }
  bool inserted = false;
  SearchNode& node = tree_.find_or_insert(
      {s, d}, mdp_.applicable_actions(s).size(), NodeType::Candidate, &inserted);
  if (inserted && audit_) audit_->node_inserted({s, d}, NodeType::Candidate);

  if (node.total > 0) return false;
  if (!node.pool.empty() &&
      brueic_convert(node, mdp_.applicable_actions(s), cfg_.convert_rule)) {
    if (audit_) audit_->node_converted({s, d});
    return false;
  }
  if (d <= ctx.switch_depth) {
    ctx.switch_depth = -1;  // dummy value, suppresses the pending update
    ctx.retract = true;
  }
  leaf_depth_ = d;
  return true;
}

double BrueIcSearch::evaluate(StateId s, int d) {
  if (d >= horizon_) return 0.0;
  SearchNode& node = tree_.at({s, d});

  PolicyStats* ps;
  if (node.active.size() < cfg_.pool_bound) {
    node.pool.emplace_back(LazyPolicy(mdp_, rng_.next_u64()));
    node.active.push_back(static_cast<std::uint32_t>(node.pool.size() - 1));
    ps = &node.pool.back();
  } else {
    ps = &node.pool[node.active[rng_.next_index(node.active.size())]];
  }

  double r = rollout_policy(mdp_, ps->policy, s, d, horizon_, rng_);
  update_policy_stats(*ps, r);

  // Retirement frees an active slot once the mean estimate has settled; the
  // statistics stay in the pool and keep feeding the conversion test. The
  // variance estimate only exists from the second sample on.
  bool retired = false;
  if (ps->n >= 2 &&
      ps->variance() / static_cast<double>(ps->n) < cfg_.retire_threshold) {
    ps->active = false;
    for (std::size_t i = 0; i < node.active.size(); ++i) {
      if (&node.pool[node.active[i]] == ps) {
        node.active.erase(node.active.begin() + i);
        break;
      }
    }
    retired = true;
  }
  if (audit_) audit_->policy_evaluated({s, d}, ps->policy.seed(), r, retired);
  return r;
}

ActionId BrueIcSearch::select(StateId s, int d, const ProbeContext& ctx) {
  auto acts = mdp_.applicable_actions(s);
  if (d <= ctx.switch_depth) return acts[rng_.next_index(acts.size())];
  return greedy_action(tree_.find({s, d}), acts, rng_);
}

void BrueIcSearch::update(StateId s, int d, ActionId a, double r) {
  SearchNode& node = tree_.at({s, d});
  auto acts = mdp_.applicable_actions(s);
  std::uint32_t ai = 0;
  while (acts[ai] != a) ++ai;
  node.actions[ai].add(r);
  node.total += 1;
  if (audit_) audit_->action_update({s, d}, a, r);
}

void BrueIcSearch::run_one_probe() {
  ++iteration_;
  ctx_.iteration = iteration_;
  brueic_switch(ctx_, horizon_);
  if (audit_) audit_->probe_begin(iteration_, ctx_.switch_depth);
  struct Hooks {
    BrueIcSearch& self;
    bool end_of_probe(StateId s, int d, ProbeContext& ctx) {
      return self.end_of_probe(s, d, ctx);
    }
    double evaluate(StateId s, int d) { return self.evaluate(s, d); }
    ActionId select(StateId s, int d, const ProbeContext& ctx) {
      return self.select(s, d, ctx);
    }
    void update(StateId s, int d, ActionId a, double r) {
      self.update(s, d, a, r);
    }
  } hooks{*this};
  leaf_depth_ = horizon_;
  mcts2e_probe(mdp_, s0_, 0, ctx_, hooks, rng_);
  if (audit_) audit_->probe_end(ctx_.switch_depth, ctx_.retract, leaf_depth_);
}

void BrueIcSearch::run(const Budget& budget) {
  auto start = std::chrono::steady_clock::now();
  auto within = [&](std::uint64_t it) {
    if (budget.kind == Budget::Kind::Iterations) return it <= budget.iterations;
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    return ms < budget.deadline_ms;
  };
  for (std::uint64_t it = 1; within(it); ++it) run_one_probe();
}

ActionId BrueIcSearch::recommendation() {
  auto root_actions = mdp_.applicable_actions(s0_);
  const SearchNode* root = tree_.find({s0_, 0});
  return root ? recommend(*root, root_actions, rng_)
              : root_actions[rng_.next_index(root_actions.size())];
}

ActionId plan_brue_ic(const GenerativeMdp& mdp, StateId s0, int horizon,
                      const PlannerConfig& cfg, const Budget& budget,
                      RandomSource& rng, SearchTree* tree_out,
                      ProbeAudit* audit) {
  SearchTree local;
  SearchTree& tree = tree_out ? *tree_out : local;
  BrueIcSearch search(mdp, s0, horizon, cfg, rng, tree, audit);
  search.run(budget);
  return search.recommendation();
}

}  // namespace mcplan
