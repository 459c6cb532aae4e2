#include <algorithm>

#include "mcplan/domains.hpp"

namespace mcplan {

namespace {

// Headings 0..7 = N, NE, E, SE, S, SW, W, NW.
constexpr int kDx[8] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kDy[8] = {-1, -1, 0, 1, 1, 1, 0, -1};

int angular_distance(int a, int b) {
  int d = std::abs(a - b) % 8;
  return std::min(d, 8 - d);
}

}  // namespace

SailingMdp::SailingMdp(const SailingConfig& cfg) : cfg_(cfg) {
  if (cfg.width < 2 || cfg.height < 2)
    throw ConfigError("sailing: grid must be at least 2x2");
  if (cfg.p_stay < 0.0 || cfg.p_stay > 1.0)
    throw ConfigError("sailing: p_stay must be in [0, 1]");
  for (double c : cfg.cost_by_angle)
    if (c < 0.0) throw ConfigError("sailing: move costs must be >= 0");
  if (cfg.horizon < 1) throw ConfigError("sailing: horizon must be >= 1");
  auto in_grid = [&](int x, int y) {
    return x >= 0 && x < cfg.width && y >= 0 && y < cfg.height;
  };
  if (!in_grid(cfg.start_x, cfg.start_y) || !in_grid(cfg.goal_x, cfg.goal_y))
    throw ConfigError("sailing: start/goal outside the grid");
  if (cfg.start_wind < 0 || cfg.start_wind >= 8)
    throw ConfigError("sailing: start_wind must be in 0..7");

  // Wind state is the direction the wind blows from; heading straight into it
  // is the one inapplicable action.
  for (int w = 0; w < 8; ++w) {
    for (int h = 0; h < 8; ++h)
      if (h != w) actions_by_wind_[w].push_back(static_cast<ActionId>(h));
  }
  s0_ = encode(cfg.start_x, cfg.start_y, cfg.start_wind);
}

StateId SailingMdp::encode(int x, int y, int wind) const {
  return (static_cast<StateId>(y) * cfg_.width + x) * 8 + wind;
}

void SailingMdp::decode(StateId s, int& x, int& y, int& wind) const {
  wind = static_cast<int>(s % 8);
  StateId cell = s / 8;
  x = static_cast<int>(cell % cfg_.width);
  y = static_cast<int>(cell / cfg_.width);
}

bool SailingMdp::is_absorbing(StateId s) const {
  int x, y, w;
  decode(s, x, y, w);
  return x == cfg_.goal_x && y == cfg_.goal_y;
}

std::span<const ActionId> SailingMdp::applicable_actions(StateId s) const {
  return actions_by_wind_[s % 8];
}

std::vector<Outcome> SailingMdp::outcome_distribution(StateId s,
                                                      ActionId a) const {
  int x, y, w;
  decode(s, x, y, w);
  if (x == cfg_.goal_x && y == cfg_.goal_y) return {{s, 1.0, 0.0}};

  int heading = static_cast<int>(a);
  int nx = std::clamp(x + kDx[heading], 0, cfg_.width - 1);
  int ny = std::clamp(y + kDy[heading], 0, cfg_.height - 1);
  int downwind = (w + 4) % 8;
  double reward = -cfg_.cost_by_angle[angular_distance(heading, downwind)];

  std::vector<Outcome> out;
  double p_shift = (1.0 - cfg_.p_stay) / 2.0;
  if (cfg_.p_stay > 0.0) out.push_back({encode(nx, ny, w), cfg_.p_stay, reward});
  if (p_shift > 0.0) {
    out.push_back({encode(nx, ny, (w + 7) % 8), p_shift, reward});
    out.push_back({encode(nx, ny, (w + 1) % 8), p_shift, reward});
  }
  return out;
}

Transition SailingMdp::step(StateId s, ActionId a, RandomSource& rng) const {
  int x, y, w;
  decode(s, x, y, w);
  if (x == cfg_.goal_x && y == cfg_.goal_y) return {s, 0.0};

  int heading = static_cast<int>(a);
  int nx = std::clamp(x + kDx[heading], 0, cfg_.width - 1);
  int ny = std::clamp(y + kDy[heading], 0, cfg_.height - 1);
  int downwind = (w + 4) % 8;
  double reward = -cfg_.cost_by_angle[angular_distance(heading, downwind)];

  int nw = w;
  double u = rng.next_real01();
  if (u >= cfg_.p_stay)
    nw = (u < cfg_.p_stay + (1.0 - cfg_.p_stay) / 2.0) ? (w + 7) % 8 : (w + 1) % 8;
  return {encode(nx, ny, nw), reward};
}

std::unique_ptr<GenerativeMdp> build_sailing(const SailingConfig& cfg) {
  return std::make_unique<SailingMdp>(cfg);
}

}  // namespace mcplan
