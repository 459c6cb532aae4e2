#include <cmath>

#include "doctest.h"
#include "mcplan/tree.hpp"
#include "support/fixtures.hpp"
#include "support/stats_check.hpp"

using namespace mcplan;
namespace fix = mcplan::testing;

namespace {

PolicyStats fresh_stats() {
  static auto mdp = fix::unit_chain(0.0, 1);
  return PolicyStats(LazyPolicy(*mdp, 0));
}

}  // namespace

TEST_CASE("policy statistics on pinned streams") {
  {
    PolicyStats ps = fresh_stats();
    update_policy_stats(ps, 2.0);
    CHECK(ps.n == 1);
    CHECK(ps.mean == doctest::Approx(2.0));
    CHECK(ps.variance() == 0.0);
  }
  {
    PolicyStats ps = fresh_stats();
    update_policy_stats(ps, 1.0);
    update_policy_stats(ps, 3.0);
    CHECK(ps.n == 2);
    CHECK(ps.mean == doctest::Approx(2.0));
    CHECK(ps.variance() == doctest::Approx(2.0));
  }
  {
    PolicyStats ps = fresh_stats();
    for (double r : {1.0, 2.0, 3.0}) update_policy_stats(ps, r);
    CHECK(ps.n == 3);
    CHECK(ps.mean == doctest::Approx(2.0));
    CHECK(ps.variance() == doctest::Approx(1.0));
  }
}

TEST_CASE("incremental statistics match two-pass computation") {
  RandomSource rng(555);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t len = 1 + rng.next_index(1000);
    std::vector<double> xs;
    xs.reserve(len);
    PolicyStats ps = fresh_stats();
    for (std::size_t i = 0; i < len; ++i) {
      double x = (rng.next_real01() - 0.5) * 20.0;
      if (trial % 7 == 0) x = 3.25;  // constant streams now and then
      xs.push_back(x);
      update_policy_stats(ps, x);
    }
    auto [mean, var] = fix::two_pass_mean_var(xs);
    CHECK(fix::close_rel(ps.mean, mean, 1e-9));
    CHECK(fix::close_rel(ps.variance(), var, 1e-9));
  }
}

TEST_CASE("action statistics track the arithmetic mean") {
  ActionStats st;
  RandomSource rng(99);
  double sum = 0.0;
  for (int i = 1; i <= 5000; ++i) {
    double r = rng.next_real01() * 10.0 - 5.0;
    sum += r;
    st.add(r);
    if (i % 500 == 0)
      CHECK(fix::close_rel(st.q, sum / i, 1e-9));
  }
  CHECK(st.n == 5000);
}
