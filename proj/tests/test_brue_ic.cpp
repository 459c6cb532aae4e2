#include <cmath>
#include <map>

#include "doctest.h"
#include "mcplan/brue_ic.hpp"
#include "mcplan/oracle.hpp"
#include "support/fixtures.hpp"

using namespace mcplan;
namespace fix = mcplan::testing;

namespace {

// A policy whose hash-determined choice at (s, d) is the wanted action.
LazyPolicy policy_choosing(const GenerativeMdp& mdp, StateId s, int d,
                           ActionId wanted) {
  for (std::uint64_t seed = 0;; ++seed) {
    LazyPolicy p(mdp, seed);
    if (p.action_at(s, d) == wanted) return p;
  }
}

PolicyStats pinned_stats(LazyPolicy p, std::uint64_t n, double mean,
                         double var) {
  PolicyStats ps(std::move(p));
  ps.n = n;
  ps.mean = mean;
  ps.m2 = n > 1 ? var * static_cast<double>(n - 1) : 0.0;
  return ps;
}

struct ConversionAudit : ProbeAudit {
  std::map<std::pair<StateId, int>, int> evals_until_convert;
  std::map<std::pair<StateId, int>, bool> converted;
  std::uint64_t conversions = 0;

  void policy_evaluated(NodeKey k, std::uint64_t, double, bool) override {
    if (!converted[{k.state, k.depth}])
      evals_until_convert[{k.state, k.depth}] += 1;
  }
  void node_converted(NodeKey k) override {
    converted[{k.state, k.depth}] = true;
    ++conversions;
  }
};

struct LocalityAudit : ProbeAudit {
  int updates_this_probe = 0;
  bool ok = true;
  std::uint64_t probes = 0;
  std::uint64_t retract_probes = 0;

  void probe_begin(std::uint64_t, int) override { updates_this_probe = 0; }
  void action_update(NodeKey, ActionId, double) override {
    ++updates_this_probe;
  }
  void probe_end(int final_switch, bool retract, int leaf_depth) override {
    ++probes;
    if (retract) ++retract_probes;
    int expected =
        (final_switch != -1 && final_switch < leaf_depth) ? 1 : 0;
    if (final_switch == -1 && updates_this_probe != 0) ok = false;
    if (updates_this_probe != expected) ok = false;
  }
};

}  // namespace

TEST_CASE("convert fixture: policy spread converts and seeds action stats") {
  auto mdp = fix::two_arm_bandit(3);
  SearchNode node({0, 0}, 2, NodeType::Candidate);
  node.pool.push_back(pinned_stats(policy_choosing(*mdp, 0, 0, 0), 2, 1.0, 0.0));
  node.pool.push_back(pinned_stats(policy_choosing(*mdp, 0, 0, 1), 2, 0.0, 0.0));

  // m = 4, EE = 0.5, EV = 0, VE = 0.25; 0/4 < 0.25 so conversion fires.
  CHECK(brueic_convert(node, mdp->applicable_actions(0), ConvertRule::Pooled));
  CHECK(node.type == NodeType::Internal);
  CHECK(node.actions[0].n == 2);
  CHECK(node.actions[0].q == doctest::Approx(1.0));
  CHECK(node.actions[1].n == 2);
  CHECK(node.actions[1].q == doctest::Approx(0.0));
  CHECK(node.total == 4);
}

TEST_CASE("convert fixture: identical noisy policies refuse") {
  auto mdp = fix::two_arm_bandit(3);
  SearchNode node({0, 0}, 2, NodeType::Candidate);
  node.pool.push_back(pinned_stats(policy_choosing(*mdp, 0, 0, 0), 4, 5.0, 8.0));
  node.pool.push_back(pinned_stats(policy_choosing(*mdp, 0, 0, 1), 4, 5.0, 8.0));

  // VE = 0, EV = 8; EV/m = 1 >= 0 refuses.
  CHECK(!brueic_convert(node, mdp->applicable_actions(0), ConvertRule::Pooled));
  CHECK(node.type == NodeType::Candidate);
  CHECK(node.actions[0].n == 0);
}

TEST_CASE("convert fixture: a single policy never converts") {
  auto mdp = fix::two_arm_bandit(3);
  SearchNode node({0, 0}, 2, NodeType::Candidate);
  node.pool.push_back(pinned_stats(policy_choosing(*mdp, 0, 0, 0), 10, 2.0, 3.0));
  CHECK(!brueic_convert(node, mdp->applicable_actions(0), ConvertRule::Pooled));
  node.pool[0].m2 = 0.0;  // even with zero variance: EV/m = 0 >= VE = 0
  CHECK(!brueic_convert(node, mdp->applicable_actions(0), ConvertRule::Pooled));
}

TEST_CASE("convert rules disagree when counts spread the estimator variance") {
  auto mdp = fix::two_arm_bandit(3);
  auto build = [&] {
    SearchNode node({0, 0}, 2, NodeType::Candidate);
    node.pool.push_back(
        pinned_stats(policy_choosing(*mdp, 0, 0, 0), 50, 0.1224745, 1.0));
    node.pool.push_back(
        pinned_stats(policy_choosing(*mdp, 0, 0, 1), 50, -0.1224745, 1.0));
    return node;
  };
  // VE ~ 0.015 sits between the pooled threshold EV/m = 0.01 and the
  // per-policy threshold 0.02.
  SearchNode a = build();
  CHECK(brueic_convert(a, mdp->applicable_actions(0), ConvertRule::Pooled));
  SearchNode b = build();
  CHECK(!brueic_convert(b, mdp->applicable_actions(0), ConvertRule::PerPolicy));
}

TEST_CASE("convert precondition: empty pool is an error") {
  auto mdp = fix::two_arm_bandit(3);
  SearchNode node({0, 0}, 2, NodeType::Candidate);
  CHECK_THROWS_AS(
      brueic_convert(node, mdp->applicable_actions(0), ConvertRule::Pooled),
      ContractViolation);
}

TEST_CASE("conversion decision is reproducible from stored statistics") {
  auto mdp = fix::deterministic_spread(5);
  SearchTree tree;
  PlannerConfig cfg;
  cfg.kind = PlannerKind::BrueIc;
  cfg.pool_bound = 6;
  cfg.retire_threshold = 1e-4;
  RandomSource rng(17);
  plan_brue_ic(*mdp, 0, 5, cfg, Budget::iteration_count(500), rng, &tree);

  for (const auto& [key, node] : tree.nodes()) {
    if (node.pool.empty() || node.type != NodeType::Internal) continue;
    double m = 0.0, ee = 0.0, ev = 0.0, ve = 0.0;
    for (const PolicyStats& ps : node.pool) m += static_cast<double>(ps.n);
    for (const PolicyStats& ps : node.pool) {
      ee += ps.n / m * ps.mean;
      ev += ps.n / m * ps.variance();
    }
    for (const PolicyStats& ps : node.pool)
      ve += ps.n / m * (ps.mean - ee) * (ps.mean - ee);
    CHECK(ev / m < ve);  // the recorded decision must replay
    (void)key;
  }
}

TEST_CASE("end-of-probe fixtures") {
  auto mdp = fix::noise_lottery(2, 6);
  SearchTree tree;
  PlannerConfig cfg;
  cfg.kind = PlannerKind::BrueIc;
  cfg.pool_bound = 3;
  cfg.retire_threshold = 1e-6;
  RandomSource rng(5);
  BrueIcSearch search(*mdp, 0, 6, cfg, rng, tree, nullptr);

  SUBCASE("visited nodes continue the probe") {
    SearchNode& node = tree.find_or_insert({1, 3}, 2, NodeType::Internal);
    node.actions[0].add(1.0);
    node.actions[0].add(0.5);
    node.actions[1].add(0.0);
    node.total = 3;
    ProbeContext ctx{5, false, 1};
    CHECK(!search.end_of_probe(1, 3, ctx));
    CHECK(ctx.switch_depth == 5);
    CHECK(!ctx.retract);
  }

  SUBCASE("fresh candidate at d <= sigma retracts") {
    ProbeContext ctx{5, false, 1};
    CHECK(search.end_of_probe(1, 2, ctx));
    CHECK(ctx.switch_depth == -1);
    CHECK(ctx.retract);
    CHECK(tree.find({1, 2}) != nullptr);
    CHECK(tree.find({1, 2})->is_candidate());
  }

  SUBCASE("fresh candidate past sigma leaves the context alone") {
    ProbeContext ctx{2, false, 1};
    CHECK(search.end_of_probe(1, 4, ctx));
    CHECK(ctx.switch_depth == 2);
    CHECK(!ctx.retract);
  }
}

TEST_CASE("evaluate grows, samples, and retires the active pool") {
  auto mdp = fix::unit_chain(1.0, 5);

  SUBCASE("a fresh candidate gets a new active policy") {
    SearchTree tree;
    PlannerConfig cfg;
    cfg.kind = PlannerKind::BrueIc;
    cfg.pool_bound = 3;
    cfg.retire_threshold = 0.0;  // psi = 0: no retirement
    RandomSource rng(7);
    BrueIcSearch search(*mdp, 0, 5, cfg, rng, tree);
    ProbeContext ctx{4, false, 1};
    CHECK(search.end_of_probe(0, 2, ctx));  // inserts the candidate
    double r = search.evaluate(0, 2);
    CHECK(r == doctest::Approx(3.0));  // deterministic chain, 3 steps to go
    const SearchNode& node = tree.at({0, 2});
    CHECK(node.pool.size() == 1);
    CHECK(node.active.size() == 1);
    CHECK(node.pool[0].n == 1);
    CHECK(node.pool[0].mean == doctest::Approx(3.0));
  }

  SUBCASE("zero-variance policies retire after the second sample") {
    SearchTree tree;
    PlannerConfig cfg;
    cfg.kind = PlannerKind::BrueIc;
    cfg.pool_bound = 1;  // force re-sampling of the single active policy
    cfg.retire_threshold = 0.01;
    RandomSource rng(8);
    BrueIcSearch search(*mdp, 0, 5, cfg, rng, tree);

    ProbeContext ctx{0, false, 1};
    search.end_of_probe(0, 0, ctx);  // root exists already; keeps candidate
    search.evaluate(0, 0);
    const SearchNode& node = tree.at({0, 0});
    CHECK(node.pool.size() == 1);
    CHECK(node.active.size() == 1);  // one sample: variance undefined, stays
    search.evaluate(0, 0);
    CHECK(node.pool.size() == 1);
    CHECK(node.active.empty());      // Var = 0 < psi after two samples
    CHECK(node.pool[0].n == 2);      // statistics retained
    CHECK(!node.pool[0].active);
    search.evaluate(0, 0);           // replacement policy arrives
    CHECK(node.pool.size() == 2);
    CHECK(node.active.size() == 1);
  }
}

TEST_CASE("pure-noise candidates stay unconverted with a single-policy pool") {
  auto mdp = fix::noise_lottery(3, 6);
  PlannerConfig cfg;
  cfg.kind = PlannerKind::BrueIc;
  cfg.pool_bound = 1;          // VE is identically 0: the conversion test
  cfg.retire_threshold = 0.0;  // psi = 0 keeps the pool single-policy
  ConversionAudit audit;
  SearchTree tree;
  RandomSource rng(90);
  plan_brue_ic(*mdp, 0, 6, cfg, Budget::iteration_count(2000), rng, &tree,
               &audit);
  CHECK(audit.conversions == 0);
  for (const auto& [key, node] : tree.nodes()) {
    CHECK(node.is_candidate());
    (void)key;
  }
}

TEST_CASE("deterministic spread converts the root children quickly") {
  auto mdp = fix::deterministic_spread(6);
  PlannerConfig cfg;
  cfg.kind = PlannerKind::BrueIc;
  cfg.pool_bound = 10;
  cfg.retire_threshold = 1e-4;
  for (int seed = 0; seed < 20; ++seed) {
    ConversionAudit audit;
    SearchTree tree;
    RandomSource rng(300 + seed);
    plan_brue_ic(*mdp, 0, 6, cfg, Budget::iteration_count(3000), rng, &tree,
                 &audit);
    for (StateId child : {StateId{1}, StateId{2}}) {
      auto key = std::make_pair(child, 1);
      REQUIRE(audit.converted.count(key));
      CHECK(audit.converted.at(key));
      CHECK(audit.evals_until_convert[key] <= 2 * static_cast<int>(cfg.pool_bound));
    }
  }
}

TEST_CASE("every candidate eventually converts when policy values spread") {
  auto mdp = fix::deterministic_spread(3);
  PlannerConfig cfg;
  cfg.kind = PlannerKind::BrueIc;
  cfg.pool_bound = 4;
  cfg.retire_threshold = 1e-3;
  SearchTree tree;
  RandomSource rng(123);
  plan_brue_ic(*mdp, 0, 3, cfg, Budget::iteration_count(1000000), rng, &tree);
  std::size_t internals = 0;
  for (const auto& [key, node] : tree.nodes()) {
    CHECK(!node.is_candidate());
    internals += node.type == NodeType::Internal ? 1 : 0;
    (void)key;
  }
  CHECK(internals == tree.size());
  CHECK(tree.size() >= 5);  // root + both children at depths 1, 2
}

TEST_CASE("update locality: one update per probe unless retracted") {
  auto mdp = fix::micro_mdp(3);
  PlannerConfig cfg;
  cfg.kind = PlannerKind::BrueIc;
  cfg.pool_bound = 5;
  cfg.retire_threshold = 1e-4;
  LocalityAudit audit;
  RandomSource rng(77);
  plan_brue_ic(*mdp, 0, mdp->horizon(), cfg, Budget::iteration_count(5000), rng,
               nullptr, &audit);
  CHECK(audit.ok);
  CHECK(audit.probes == 5000);
  CHECK(audit.retract_probes > 0);  // fresh tree: early probes retract
}

TEST_CASE("brue_ic converges on an oracle-solvable micro instance") {
  auto mdp = fix::micro_mdp(1);
  int H = mdp->horizon();
  ValueTables vt = value_iteration(*mdp, H);
  PlannerConfig cfg;
  cfg.kind = PlannerKind::BrueIc;
  cfg.pool_bound = 8;
  cfg.retire_threshold = 1e-3;
  int optimal = 0;
  const int seeds = 100;
  for (int seed = 0; seed < seeds; ++seed) {
    RandomSource rng(5000 + seed);
    ActionId a =
        plan_brue_ic(*mdp, 0, H, cfg, Budget::iteration_count(4000), rng);
    if (simple_regret(vt, 0, H, a) <= 1e-12) ++optimal;
  }
  CHECK(optimal >= 95);
}
