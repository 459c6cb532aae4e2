#include <algorithm>
#include <cmath>

#include "mcplan/domains.hpp"

namespace mcplan {

TabularMdp::TabularMdp(StateId initial, int horizon)
    : s0_(initial), horizon_(horizon) {
  if (horizon < 1) throw ConfigError("tabular: horizon must be >= 1");
}

void TabularMdp::add_action(StateId s, ActionId a,
                            std::vector<Outcome> outcomes) {
  if (outcomes.empty()) throw ConfigError("tabular: empty outcome list");
  double total = 0.0;
  for (const Outcome& o : outcomes) {
    if (o.probability < 0.0)
      throw ConfigError("tabular: negative outcome probability");
    total += o.probability;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ConfigError("tabular: outcome probabilities must sum to 1");

  Row& r = rows_[s];
  auto it = std::lower_bound(r.actions.begin(), r.actions.end(), a);
  if (it != r.actions.end() && *it == a)
    throw ConfigError("tabular: duplicate (state, action)");
  std::size_t pos = static_cast<std::size_t>(it - r.actions.begin());
  r.actions.insert(it, a);
  r.outcomes.insert(r.outcomes.begin() + pos, std::move(outcomes));
}

const TabularMdp::Row& TabularMdp::row(StateId s) const {
  auto it = rows_.find(s);
  if (it == rows_.end() || it->second.actions.empty())
    throw ContractViolation("tabular: state " + std::to_string(s) +
                            " has no actions");
  return it->second;
}

int TabularMdp::action_index(const Row& r, ActionId a) const {
  auto it = std::lower_bound(r.actions.begin(), r.actions.end(), a);
  if (it == r.actions.end() || *it != a)
    throw ContractViolation("tabular: unknown action " + std::to_string(a));
  return static_cast<int>(it - r.actions.begin());
}

std::span<const ActionId> TabularMdp::applicable_actions(StateId s) const {
  return row(s).actions;
}

Transition TabularMdp::step(StateId s, ActionId a, RandomSource& rng) const {
  const Row& r = row(s);
  const auto& outs = r.outcomes[action_index(r, a)];
  double u = rng.next_real01();
  double acc = 0.0;
  for (const Outcome& o : outs) {
    acc += o.probability;
    if (u < acc) return {o.next, o.reward};
  }
  return {outs.back().next, outs.back().reward};
}

std::vector<Outcome> TabularMdp::outcome_distribution(StateId s,
                                                      ActionId a) const {
  const Row& r = row(s);
  return r.outcomes[action_index(r, a)];
}

}  // namespace mcplan
