#include "mcplan/oracle.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <stdexcept>

namespace mcplan {

namespace {

// Reachable fragment of an explicit MDP, states sorted by id for determinism.
struct EnumeratedModel {
  std::vector<StateId> states;
  std::unordered_map<StateId, std::uint32_t> index;
  std::vector<std::vector<ActionId>> actions;
  // outcomes[i][k] aligned with actions[i]; Outcome::next replaced by index.
  struct IndexedOutcome {
    std::uint32_t next;
    double probability;
    double reward;
  };
  std::vector<std::vector<std::vector<IndexedOutcome>>> outcomes;
};

EnumeratedModel enumerate_reachable(const GenerativeMdp& mdp) {
  if (!mdp.has_explicit_distribution())
    throw CapabilityError("oracle requires explicit outcome distributions");

  std::unordered_map<StateId, bool> seen;
  std::deque<StateId> frontier{mdp.initial_state()};
  seen[mdp.initial_state()] = true;
  std::vector<StateId> order;
  while (!frontier.empty()) {
    StateId s = frontier.front();
    frontier.pop_front();
    order.push_back(s);
    for (ActionId a : mdp.applicable_actions(s)) {
      for (const Outcome& o : mdp.outcome_distribution(s, a)) {
        if (o.probability <= 0.0) continue;
        if (!seen[o.next]) {
          seen[o.next] = true;
          frontier.push_back(o.next);
        }
      }
    }
  }

  EnumeratedModel model;
  model.states = order;
  std::sort(model.states.begin(), model.states.end());
  for (std::uint32_t i = 0; i < model.states.size(); ++i)
    model.index[model.states[i]] = i;

  model.actions.resize(model.states.size());
  model.outcomes.resize(model.states.size());
  for (std::uint32_t i = 0; i < model.states.size(); ++i) {
    StateId s = model.states[i];
    auto acts = mdp.applicable_actions(s);
    model.actions[i].assign(acts.begin(), acts.end());
    model.outcomes[i].resize(acts.size());
    for (std::size_t k = 0; k < acts.size(); ++k) {
      for (const Outcome& o : mdp.outcome_distribution(s, acts[k])) {
        if (o.probability <= 0.0) continue;
        model.outcomes[i][k].push_back(
            {model.index.at(o.next), o.probability, o.reward});
      }
    }
  }
  return model;
}

}  // namespace

std::uint32_t ValueTables::state_index(StateId s) const {
  auto it = index_.find(s);
  if (it == index_.end())
    throw std::out_of_range("value tables do not cover state " +
                            std::to_string(s));
  return it->second;
}

bool ValueTables::covers(StateId s) const { return index_.count(s) > 0; }

double ValueTables::value(StateId s, int h) const {
  if (h < 0 || h > horizon_)
    throw std::out_of_range("steps-to-go outside [0, horizon]");
  return v_[static_cast<std::size_t>(h) * states_.size() + state_index(s)];
}

double ValueTables::q_value(StateId s, int h, ActionId a) const {
  if (h < 1 || h > horizon_)
    throw std::out_of_range("steps-to-go outside [1, horizon]");
  std::uint32_t i = state_index(s);
  const auto& acts = actions_[i];
  auto it = std::find(acts.begin(), acts.end(), a);
  if (it == acts.end())
    throw std::out_of_range("action not applicable in queried state");
  std::size_t slot = action_offset_[i] + static_cast<std::size_t>(it - acts.begin());
  return q_[static_cast<std::size_t>(h - 1) * total_actions_ + slot];
}

std::vector<ActionId> ValueTables::optimal_actions(StateId s, int h) const {
  std::vector<ActionId> out;
  double best = value(s, h);
  for (ActionId a : actions_[state_index(s)])
    if (q_value(s, h, a) >= best - 1e-12) out.push_back(a);
  return out;
}

void ValueTables::write_flat(std::ostream& os) const {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    for (int h = 1; h <= horizon_; ++h) {
      for (ActionId a : actions_[i]) {
        os << states_[i] << ' ' << h << ' ' << a << ' '
           << q_value(states_[i], h, a) << '\n';
      }
    }
  }
}

ValueTables value_iteration(const GenerativeMdp& mdp, int horizon) {
  if (horizon < 1) throw ContractViolation("horizon must be >= 1");
  EnumeratedModel model = enumerate_reachable(mdp);

  ValueTables t;
  t.horizon_ = horizon;
  t.states_ = model.states;
  t.index_ = model.index;
  t.actions_ = model.actions;
  t.action_offset_.resize(model.states.size());
  std::uint32_t offset = 0;
  for (std::size_t i = 0; i < model.states.size(); ++i) {
    t.action_offset_[i] = offset;
    offset += static_cast<std::uint32_t>(model.actions[i].size());
  }
  t.total_actions_ = offset;

  std::size_t n = model.states.size();
  t.v_.assign(static_cast<std::size_t>(horizon + 1) * n, 0.0);
  t.q_.assign(static_cast<std::size_t>(horizon) * offset, 0.0);

  for (int h = 1; h <= horizon; ++h) {
    const double* v_prev = &t.v_[static_cast<std::size_t>(h - 1) * n];
    double* v_cur = &t.v_[static_cast<std::size_t>(h) * n];
    double* q_cur = &t.q_[static_cast<std::size_t>(h - 1) * offset];
    for (std::size_t i = 0; i < n; ++i) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < model.actions[i].size(); ++k) {
        double q = 0.0;
        for (const auto& o : model.outcomes[i][k])
          q += o.probability * (o.reward + v_prev[o.next]);
        q_cur[t.action_offset_[i] + k] = q;
        best = std::max(best, q);
      }
      v_cur[i] = best;
    }
  }
  return t;
}

double UniformValueTables::value(StateId s, int h) const {
  if (h < 0 || h > horizon_)
    throw std::out_of_range("steps-to-go outside [0, horizon]");
  auto it = index_.find(s);
  if (it == index_.end())
    throw std::out_of_range("uniform value tables do not cover state " +
                            std::to_string(s));
  return v_[static_cast<std::size_t>(h) * states_.size() + it->second];
}

UniformValueTables uniform_policy_value(const GenerativeMdp& mdp, int horizon) {
  if (horizon < 1) throw ContractViolation("horizon must be >= 1");
  EnumeratedModel model = enumerate_reachable(mdp);

  UniformValueTables t;
  t.horizon_ = horizon;
  t.states_ = model.states;
  t.index_ = model.index;
  std::size_t n = model.states.size();
  t.v_.assign(static_cast<std::size_t>(horizon + 1) * n, 0.0);

  for (int h = 1; h <= horizon; ++h) {
    const double* v_prev = &t.v_[static_cast<std::size_t>(h - 1) * n];
    double* v_cur = &t.v_[static_cast<std::size_t>(h) * n];
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t k = 0; k < model.actions[i].size(); ++k) {
        for (const auto& o : model.outcomes[i][k])
          sum += o.probability * (o.reward + v_prev[o.next]);
      }
      v_cur[i] = sum / static_cast<double>(model.actions[i].size());
    }
  }
  return t;
}

PolicyEnumeration enumerate_policies(const GenerativeMdp& mdp, int horizon,
                                     std::size_t max_policies) {
  if (horizon < 1) throw ContractViolation("horizon must be >= 1");
  EnumeratedModel model = enumerate_reachable(mdp);

  // Layered reachability from (s0, depth 0); decision points are the (state,
  // depth) pairs with depth < horizon, ordered by (depth, state id).
  std::vector<std::vector<std::uint32_t>> layers(horizon + 1);
  {
    std::vector<char> in_layer(model.states.size(), 0);
    layers[0].push_back(model.index.at(mdp.initial_state()));
    for (int d = 0; d < horizon; ++d) {
      std::fill(in_layer.begin(), in_layer.end(), 0);
      for (std::uint32_t i : layers[d])
        for (const auto& row : model.outcomes[i])
          for (const auto& o : row) in_layer[o.next] = 1;
      for (std::uint32_t i = 0; i < in_layer.size(); ++i)
        if (in_layer[i]) layers[d + 1].push_back(i);
    }
  }

  PolicyEnumeration out;
  struct Point {
    std::uint32_t state;
    int depth;
    std::uint32_t n_actions;
  };
  std::vector<Point> points;
  double count = 1.0;
  for (int d = 0; d < horizon; ++d) {
    for (std::uint32_t i : layers[d]) {
      points.push_back({i, d, static_cast<std::uint32_t>(model.actions[i].size())});
      out.decision_points.emplace_back(model.states[i], d);
      count *= static_cast<double>(model.actions[i].size());
      if (count > static_cast<double>(max_policies))
        throw CapabilityError("policy cone exceeds the enumeration limit");
    }
  }

  // Per-depth value maps for one policy evaluation pass.
  std::vector<std::vector<double>> value_at(horizon + 1);
  for (int d = 0; d <= horizon; ++d)
    value_at[d].assign(model.states.size(), 0.0);

  std::vector<std::uint32_t> choice(points.size(), 0);
  std::uint32_t root = model.index.at(mdp.initial_state());
  bool done = false;
  while (!done) {
    // Evaluate the current assignment by backward induction over layers.
    for (int d = horizon - 1; d >= 0; --d) {
      // Find this depth's slice of decision points (sorted by depth).
      // Points are grouped by depth in construction order.
      for (std::size_t p = 0; p < points.size(); ++p) {
        if (points[p].depth != d) continue;
        std::uint32_t i = points[p].state;
        std::uint32_t k = choice[p];
        double v = 0.0;
        for (const auto& o : model.outcomes[i][k])
          v += o.probability * (o.reward + value_at[d + 1][o.next]);
        value_at[d][i] = v;
      }
    }
    EnumeratedPolicy pol;
    pol.choices.resize(points.size());
    for (std::size_t p = 0; p < points.size(); ++p)
      pol.choices[p] = model.actions[points[p].state][choice[p]];
    pol.value = value_at[0][root];
    out.policies.push_back(std::move(pol));

    // Mixed-radix increment.
    done = true;
    for (std::size_t p = 0; p < points.size(); ++p) {
      if (++choice[p] < points[p].n_actions) {
        done = false;
        break;
      }
      choice[p] = 0;
    }
  }
  return out;
}

double simple_regret(const ValueTables& tables, StateId s0, int horizon,
                     ActionId a) {
  return tables.value(s0, horizon) - tables.q_value(s0, horizon, a);
}

}  // namespace mcplan
