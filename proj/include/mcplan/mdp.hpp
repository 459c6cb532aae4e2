#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcplan/rng.hpp"

namespace mcplan {

using StateId = std::uint64_t;
using ActionId = std::int32_t;

struct Transition {
  StateId next;
  double reward;
};

struct Outcome {
  StateId next;
  double probability;
  double reward;
};

// Caller violated an operation precondition (e.g. inapplicable action).
struct ContractViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The model cannot serve the request (no explicit distribution, state space
// too large to enumerate, ...).
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite-horizon MDP accessed through sampled transitions.
//
// Contract: applicable_actions(s) is non-empty and identically ordered across
// calls for the same state; horizon() >= 1. Implementations are immutable
// after construction and may be shared across threads; sampling draws only
// from the caller-supplied RandomSource. outcome_distribution is optional
// (oracle use) and, when present, normalizes to 1 within 1e-12 per (s, a).
class GenerativeMdp {
 public:
  virtual ~GenerativeMdp() = default;

  virtual StateId initial_state() const = 0;
  virtual int horizon() const = 0;
  virtual std::span<const ActionId> applicable_actions(StateId s) const = 0;

  // Precondition: a is in applicable_actions(s). Not validated here; use the
  // free function sample_transition for a checked entry point.
  virtual Transition step(StateId s, ActionId a, RandomSource& rng) const = 0;

  virtual bool has_explicit_distribution() const { return false; }
  virtual std::vector<Outcome> outcome_distribution(StateId s,
                                                    ActionId a) const;

  virtual bool is_absorbing(StateId) const { return false; }
};

bool action_applicable(const GenerativeMdp& mdp, StateId s, ActionId a);

// Checked transition sampling; throws ContractViolation if a is not
// applicable in s.
Transition sample_transition(const GenerativeMdp& mdp, StateId s, ActionId a,
                             RandomSource& rng);

}  // namespace mcplan
