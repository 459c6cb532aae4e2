#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "mcplan/oracle.hpp"
#include "support/fixtures.hpp"

using namespace mcplan;
namespace fix = mcplan::testing;

TEST_CASE("value iteration on a hand-checked two-action chain") {
  // Two self-looping arms paying 1 and 0; V*_2(s0) = 2.
  auto mdp = fix::two_arm_bandit(2);
  ValueTables t = value_iteration(*mdp, 2);
  CHECK(t.value(0, 2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.value(0, 0) == 0.0);
  CHECK(t.q_value(0, 2, 0) == doctest::Approx(2.0));
  CHECK(t.q_value(0, 2, 1) == doctest::Approx(1.0));
}

TEST_CASE("value iteration on an absorbing zero-reward model is all zeros") {
  auto mdp = fix::unit_chain(0.0, 4);
  ValueTables t = value_iteration(*mdp, 4);
  for (int h = 0; h <= 4; ++h) CHECK(t.value(0, h) == 0.0);
}

TEST_CASE("policy enumeration counts depth-indexed policies") {
  {
    auto m = std::make_unique<TabularMdp>(0, 1);
    m->add_action(0, 0, {{0, 1.0, 0.0}});
    m->add_action(0, 7, {{0, 1.0, 1.0}});
    auto en = enumerate_policies(*m, 1);
    CHECK(en.policies.size() == 2);
  }
  {
    auto m = fix::two_arm_bandit(2);
    auto en = enumerate_policies(*m, 2);
    CHECK(en.policies.size() == 4);  // (s,0) and (s,1) each pick one of 2
    CHECK(en.decision_points.size() == 2);
  }
}

TEST_CASE("policy enumeration rejects oversized cones") {
  auto m = fix::two_arm_bandit(4);
  CHECK_THROWS_AS(enumerate_policies(*m, 4, 8), CapabilityError);
}

TEST_CASE("cross-oracle agreement on micro MDPs") {
  for (int v = 0; v < fix::kMicroMdpCount; ++v) {
    CAPTURE(v);
    auto mdp = fix::micro_mdp(v);
    int H = mdp->horizon();
    ValueTables vt = value_iteration(*mdp, H);
    UniformValueTables ut = uniform_policy_value(*mdp, H);
    auto en = enumerate_policies(*mdp, H);

    double best = -1e300, sum = 0.0;
    for (const auto& p : en.policies) {
      best = std::max(best, p.value);
      sum += p.value;
    }
    double mean = sum / static_cast<double>(en.policies.size());
    CHECK(vt.value(mdp->initial_state(), H) == doctest::Approx(best).epsilon(1e-9));
    CHECK(ut.value(mdp->initial_state(), H) == doctest::Approx(mean).epsilon(1e-9));

    // Monotonicity: no enumerated policy beats V*.
    for (const auto& p : en.policies)
      CHECK(p.value <= vt.value(mdp->initial_state(), H) + 1e-9);
  }
}

TEST_CASE("uniform value equals optimal value when there is no choice") {
  auto mdp = fix::coin_flip(3);
  ValueTables vt = value_iteration(*mdp, 3);
  UniformValueTables ut = uniform_policy_value(*mdp, 3);
  for (int h = 0; h <= 3; ++h)
    CHECK(ut.value(0, h) == doctest::Approx(vt.value(0, h)).epsilon(1e-12));
}

TEST_CASE("two-arm one-step uniform value is the action average") {
  auto mdp = fix::two_arm_bandit(1);
  UniformValueTables ut = uniform_policy_value(*mdp, 1);
  CHECK(ut.value(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("Bellman consistency of stored tables") {
  auto mdp = fix::micro_mdp(3);
  int H = mdp->horizon();
  ValueTables vt = value_iteration(*mdp, H);
  for (StateId s : vt.states()) {
    for (int h = 1; h <= H; ++h) {
      double best = -1e300;
      for (ActionId a : mdp->applicable_actions(s))
        best = std::max(best, vt.q_value(s, h, a));
      CHECK(std::abs(vt.value(s, h) - best) <= 1e-12);
    }
  }
}

TEST_CASE("uniform-value backward consistency") {
  auto mdp = fix::micro_mdp(0);
  int H = mdp->horizon();
  UniformValueTables ut = uniform_policy_value(*mdp, H);
  for (int h = 1; h <= H; ++h) {
    for (StateId s : {StateId{0}, StateId{1}}) {
      auto acts = mdp->applicable_actions(s);
      double sum = 0.0;
      for (ActionId a : acts)
        for (const Outcome& o : mdp->outcome_distribution(s, a))
          sum += o.probability * (o.reward + ut.value(o.next, h - 1));
      CHECK(std::abs(ut.value(s, h) - sum / acts.size()) <= 1e-12);
    }
  }
}

TEST_CASE("simple regret basics") {
  auto mdp = fix::micro_mdp(1);
  int H = mdp->horizon();
  ValueTables vt = value_iteration(*mdp, H);
  StateId s0 = mdp->initial_state();

  auto optimal = vt.optimal_actions(s0, H);
  REQUIRE(!optimal.empty());
  CHECK(simple_regret(vt, s0, H, optimal.front()) ==
        doctest::Approx(0.0).epsilon(1e-12));

  for (ActionId a : mdp->applicable_actions(s0))
    CHECK(simple_regret(vt, s0, H, a) >= -1e-12);

  CHECK_THROWS_AS(simple_regret(vt, 999, H, 0), std::out_of_range);
}

TEST_CASE("regret of a known Q gap") {
  // Q*_1(s0, .) = (2, 1): regret of the second action is 1.
  auto m = std::make_unique<TabularMdp>(0, 1);
  m->add_action(0, 0, {{0, 1.0, 2.0}});
  m->add_action(0, 1, {{0, 1.0, 1.0}});
  ValueTables vt = value_iteration(*m, 1);
  CHECK(simple_regret(vt, 0, 1, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("regret is invariant to a constant reward shift") {
  const double shift = 2.75;
  auto base = fix::micro_mdp(3);
  auto shifted = std::make_unique<TabularMdp>(base->initial_state(), base->horizon());
  for (StateId s : {StateId{0}, StateId{1}, StateId{2}}) {
    for (ActionId a : base->applicable_actions(s)) {
      auto outs = base->outcome_distribution(s, a);
      for (auto& o : outs) o.reward += shift;
      shifted->add_action(s, a, std::move(outs));
    }
  }
  int H = base->horizon();
  ValueTables vb = value_iteration(*base, H);
  ValueTables vs = value_iteration(*shifted, H);
  for (ActionId a : base->applicable_actions(0)) {
    CHECK(simple_regret(vb, 0, H, a) ==
          doctest::Approx(simple_regret(vs, 0, H, a)).epsilon(1e-9));
  }
  // Both V* and Q* shift by H * c.
  CHECK(vs.value(0, H) == doctest::Approx(vb.value(0, H) + H * shift).epsilon(1e-9));
}

TEST_CASE("flat table export is sorted and parseable") {
  auto mdp = fix::two_arm_bandit(2);
  ValueTables vt = value_iteration(*mdp, 2);
  std::ostringstream os;
  vt.write_flat(os);
  std::istringstream is(os.str());
  StateId s;
  int h;
  ActionId a;
  double q;
  int lines = 0;
  while (is >> s >> h >> a >> q) {
    CHECK(q == doctest::Approx(vt.q_value(s, h, a)));
    ++lines;
  }
  CHECK(lines == 4);  // 1 state x 2 horizons x 2 actions
}

TEST_CASE("oracle requires explicit distributions") {
  struct Opaque : GenerativeMdp {
    std::vector<ActionId> acts{0};
    StateId initial_state() const override { return 0; }
    int horizon() const override { return 2; }
    std::span<const ActionId> applicable_actions(StateId) const override {
      return acts;
    }
    Transition step(StateId s, ActionId, RandomSource&) const override {
      return {s, 0.0};
    }
  } opaque;
  CHECK_THROWS_AS(value_iteration(opaque, 2), CapabilityError);
  CHECK_THROWS_AS(uniform_policy_value(opaque, 2), CapabilityError);
}
