#include "mcplan/tree.hpp"

namespace mcplan {

void update_policy_stats(PolicyStats& ps, double r) {
  ps.n += 1;
  double delta = r - ps.mean;
  ps.mean += delta / static_cast<double>(ps.n);
  ps.m2 += delta * (r - ps.mean);
}

}  // namespace mcplan
