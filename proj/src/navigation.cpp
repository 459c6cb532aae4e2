#include "mcplan/domains.hpp"

namespace mcplan {

namespace {

// Moves 0..3 = east, west, south, north.
constexpr int kDx[4] = {1, -1, 0, 0};
constexpr int kDy[4] = {0, 0, 1, -1};

}  // namespace

NavigationMdp::NavigationMdp(const NavigationConfig& cfg) : cfg_(cfg) {
  if (cfg.width < 1 || cfg.height < 1)
    throw ConfigError("navigation: grid must be at least 1x1");
  if (static_cast<int>(cfg.p_disappear.size()) != cfg.width)
    throw ConfigError("navigation: p_disappear needs one entry per column");
  for (double p : cfg.p_disappear)
    if (p < 0.0 || p > 1.0)
      throw ConfigError("navigation: disappearance probabilities must be in [0, 1]");
  auto in_grid = [&](int x, int y) {
    return x >= 0 && x < cfg.width && y >= 0 && y < cfg.height;
  };
  if (!in_grid(cfg.start_x, cfg.start_y) || !in_grid(cfg.goal_x, cfg.goal_y))
    throw ConfigError("navigation: start/goal outside the grid");
  if (cfg.start_x == cfg.goal_x && cfg.start_y == cfg.goal_y)
    throw ConfigError("navigation: start must differ from goal");
  if (cfg.horizon < 1) throw ConfigError("navigation: horizon must be >= 1");

  actions_by_cell_.resize(static_cast<std::size_t>(cfg.width) * cfg.height);
  for (int y = 0; y < cfg.height; ++y) {
    for (int x = 0; x < cfg.width; ++x) {
      auto& acts = actions_by_cell_[static_cast<std::size_t>(y) * cfg.width + x];
      for (int m = 0; m < 4; ++m)
        if (in_grid(x + kDx[m], y + kDy[m])) acts.push_back(static_cast<ActionId>(m));
    }
  }
  // Dead and goal states expose the full move set; every action self-loops.
  for (int m = 0; m < 4; ++m) absorbing_actions_.push_back(static_cast<ActionId>(m));
  s0_ = encode(cfg.start_x, cfg.start_y);
}

StateId NavigationMdp::encode(int x, int y) const {
  return static_cast<StateId>(y) * cfg_.width + x;
}

StateId NavigationMdp::dead_state() const {
  return static_cast<StateId>(cfg_.width) * cfg_.height;
}

StateId NavigationMdp::goal_state() const {
  return encode(cfg_.goal_x, cfg_.goal_y);
}

bool NavigationMdp::is_absorbing(StateId s) const {
  return s == dead_state() || s == goal_state();
}

std::span<const ActionId> NavigationMdp::applicable_actions(StateId s) const {
  if (is_absorbing(s)) return absorbing_actions_;
  return actions_by_cell_[s];
}

std::vector<Outcome> NavigationMdp::outcome_distribution(StateId s,
                                                         ActionId a) const {
  if (is_absorbing(s)) return {{s, 1.0, 0.0}};

  int x = static_cast<int>(s % cfg_.width);
  int y = static_cast<int>(s / cfg_.width);
  int nx = x + kDx[a];
  int ny = y + kDy[a];
  double p_die = cfg_.p_disappear[nx];
  StateId target = encode(nx, ny);
  double arrive_reward =
      cfg_.step_reward + (target == goal_state() ? cfg_.goal_reward : 0.0);

  std::vector<Outcome> out;
  if (p_die < 1.0) out.push_back({target, 1.0 - p_die, arrive_reward});
  if (p_die > 0.0) out.push_back({dead_state(), p_die, cfg_.step_reward});
  return out;
}

Transition NavigationMdp::step(StateId s, ActionId a, RandomSource& rng) const {
  if (is_absorbing(s)) return {s, 0.0};

  int x = static_cast<int>(s % cfg_.width);
  int y = static_cast<int>(s / cfg_.width);
  int nx = x + kDx[a];
  int ny = y + kDy[a];
  if (rng.next_bernoulli(cfg_.p_disappear[nx]))
    return {dead_state(), cfg_.step_reward};
  StateId target = encode(nx, ny);
  return {target, cfg_.step_reward +
                      (target == goal_state() ? cfg_.goal_reward : 0.0)};
}

std::unique_ptr<GenerativeMdp> build_navigation(const NavigationConfig& cfg) {
  return std::make_unique<NavigationMdp>(cfg);
}

}  // namespace mcplan
