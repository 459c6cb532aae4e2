#pragma once

#include "mcplan/planners.hpp"

namespace mcplan {

// The MCTS2e recursion. A probe walks from the root until end_of_probe says
// stop (returning evaluate's leaf value), selects one action per depth, and
// accumulates r = R + probe(s', d+1). The node at ctx.switch_depth is the
// only one updated, on the way back up; end_of_probe may set switch_depth to
// -1 mid-probe to suppress that update.
//
// Hooks interface:
//   bool end_of_probe(StateId, int depth, ProbeContext&)
//   double evaluate(StateId, int depth)
//   ActionId select(StateId, int depth, const ProbeContext&)
//   void update(StateId, int depth, ActionId, double reward_to_go)
template <class Hooks>
double mcts2e_probe(const GenerativeMdp& mdp, StateId s, int d,
                    ProbeContext& ctx, Hooks& hooks, RandomSource& rng) {
  if (hooks.end_of_probe(s, d, ctx)) return hooks.evaluate(s, d);
  ActionId a = hooks.select(s, d, ctx);
  Transition t = mdp.step(s, a, rng);
  double r = t.reward + mcts2e_probe(mdp, t.next, d + 1, ctx, hooks, rng);
  if (d == ctx.switch_depth) hooks.update(s, d, a, r);
  return r;
}

}  // namespace mcplan
