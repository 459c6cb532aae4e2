#include "mcplan/domains.hpp"

#include <sstream>

namespace mcplan {

namespace {

std::unique_ptr<GenerativeMdp> load_sailing(const ConfigFile& cfg) {
  SailingConfig sc{};
  sc.width = static_cast<int>(cfg.get_int("", "width"));
  sc.height = static_cast<int>(cfg.get_int("", "height"));
  sc.p_stay = cfg.get_double("", "p_stay");
  auto costs = cfg.get_doubles("", "costs");
  if (costs.size() != 4)
    throw ConfigError(cfg.origin() + ": sailing needs 4 move costs");
  std::copy(costs.begin(), costs.end(), sc.cost_by_angle.begin());
  auto start = cfg.get_ints("", "start");
  auto goal = cfg.get_ints("", "goal");
  if (start.size() != 2 || goal.size() != 2)
    throw ConfigError(cfg.origin() + ": start/goal need two coordinates");
  sc.start_x = static_cast<int>(start[0]);
  sc.start_y = static_cast<int>(start[1]);
  sc.goal_x = static_cast<int>(goal[0]);
  sc.goal_y = static_cast<int>(goal[1]);
  sc.start_wind = static_cast<int>(cfg.get_int("", "start_wind"));
  sc.horizon = static_cast<int>(cfg.get_int("", "horizon"));
  return build_sailing(sc);
}

std::unique_ptr<GenerativeMdp> load_navigation(const ConfigFile& cfg) {
  NavigationConfig nc{};
  nc.width = static_cast<int>(cfg.get_int("", "width"));
  nc.height = static_cast<int>(cfg.get_int("", "height"));
  nc.p_disappear = cfg.get_doubles("", "p_disappear");
  auto start = cfg.get_ints("", "start");
  auto goal = cfg.get_ints("", "goal");
  if (start.size() != 2 || goal.size() != 2)
    throw ConfigError(cfg.origin() + ": start/goal need two coordinates");
  nc.start_x = static_cast<int>(start[0]);
  nc.start_y = static_cast<int>(start[1]);
  nc.goal_x = static_cast<int>(goal[0]);
  nc.goal_y = static_cast<int>(goal[1]);
  nc.step_reward = cfg.get_double("", "step_reward");
  nc.goal_reward = cfg.get_double("", "goal_reward");
  nc.horizon = static_cast<int>(cfg.get_int("", "horizon"));
  return build_navigation(nc);
}

std::unique_ptr<GenerativeMdp> load_sysadmin(const ConfigFile& cfg) {
  SysAdminConfig sc{};
  sc.machines = static_cast<int>(cfg.get_int("", "machines"));
  std::string topology = cfg.get_string("", "topology");
  if (topology == "ring") {
    sc.adjacency = SysAdminConfig::ring(sc.machines);
  } else if (topology == "line") {
    sc.adjacency = SysAdminConfig::line(sc.machines);
  } else if (topology == "edges") {
    sc.adjacency.resize(sc.machines);
    auto edges = cfg.get_ints("", "edges");
    if (edges.size() % 2 != 0)
      throw ConfigError(cfg.origin() + ": edges must list pairs");
    for (std::size_t i = 0; i + 1 < edges.size(); i += 2) {
      int a = static_cast<int>(edges[i]);
      int b = static_cast<int>(edges[i + 1]);
      if (a < 0 || a >= sc.machines || b < 0 || b >= sc.machines)
        throw ConfigError(cfg.origin() + ": edge endpoint out of range");
      sc.adjacency[a].push_back(b);
      sc.adjacency[b].push_back(a);
    }
    for (auto& v : sc.adjacency) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  } else {
    throw ConfigError(cfg.origin() + ": unknown topology '" + topology + "'");
  }
  sc.p_fail = cfg.get_double("", "p_fail");
  sc.p_infect = cfg.get_double("", "p_infect");
  sc.p_reboot_success = cfg.get_double("", "p_reboot");
  sc.reward_per_running = cfg.get_double("", "reward_per_running");
  sc.horizon = static_cast<int>(cfg.get_int("", "horizon"));
  return build_sysadmin(sc);
}

// Tabular instances list transitions as keys "trans.<state>.<action>" whose
// value is a sequence of next:probability:reward triples.
std::unique_ptr<GenerativeMdp> load_tabular(const ConfigFile& cfg) {
  auto mdp = std::make_unique<TabularMdp>(
      cfg.get_u64("", "initial"), static_cast<int>(cfg.get_int("", "horizon")));
  for (const auto& key : cfg.keys("")) {
    if (key.rfind("trans.", 0) != 0) continue;
    std::size_t dot = key.find('.', 6);
    if (dot == std::string::npos)
      throw ConfigError(cfg.origin() + ": malformed transition key '" + key + "'");
    StateId s = std::stoull(key.substr(6, dot - 6));
    ActionId a = static_cast<ActionId>(std::stol(key.substr(dot + 1)));
    std::vector<Outcome> outcomes;
    std::istringstream is(cfg.get_string("", key));
    std::string triple;
    while (is >> triple) {
      std::size_t c1 = triple.find(':');
      std::size_t c2 = triple.find(':', c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos)
        throw ConfigError(cfg.origin() + ": expected next:prob:reward in '" +
                          key + "'");
      outcomes.push_back({std::stoull(triple.substr(0, c1)),
                          std::stod(triple.substr(c1 + 1, c2 - c1 - 1)),
                          std::stod(triple.substr(c2 + 1))});
    }
    mdp->add_action(s, a, std::move(outcomes));
  }
  return mdp;
}

}  // namespace

std::unique_ptr<GenerativeMdp> load_domain(const ConfigFile& cfg) {
  std::string kind = cfg.get_string("", "kind");
  if (kind == "sailing") return load_sailing(cfg);
  if (kind == "navigation") return load_navigation(cfg);
  if (kind == "sysadmin") return load_sysadmin(cfg);
  if (kind == "tabular") return load_tabular(cfg);
  throw ConfigError(cfg.origin() + ": unknown domain kind '" + kind + "'");
}

std::unique_ptr<GenerativeMdp> load_domain(const std::string& path) {
  return load_domain(ConfigFile::parse_file(path));
}

}  // namespace mcplan
