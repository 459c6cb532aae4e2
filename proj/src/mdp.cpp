#include "mcplan/mdp.hpp"

#include <algorithm>

namespace mcplan {

std::vector<Outcome> GenerativeMdp::outcome_distribution(StateId, ActionId) const {
  throw CapabilityError("this model does not provide explicit distributions");
}

bool action_applicable(const GenerativeMdp& mdp, StateId s, ActionId a) {
  auto acts = mdp.applicable_actions(s);
  return std::find(acts.begin(), acts.end(), a) != acts.end();
}

Transition sample_transition(const GenerativeMdp& mdp, StateId s, ActionId a,
                             RandomSource& rng) {
  if (!action_applicable(mdp, s, a)) {
    throw ContractViolation("action " + std::to_string(a) +
                            " is not applicable in state " + std::to_string(s));
  }
  return mdp.step(s, a, rng);
}

}  // namespace mcplan
