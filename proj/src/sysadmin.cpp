#include <algorithm>
#include <bit>

#include "mcplan/domains.hpp"

namespace mcplan {

std::vector<std::vector<int>> SysAdminConfig::ring(int n) {
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    adj[i].push_back((i + n - 1) % n);
    adj[i].push_back((i + 1) % n);
    std::sort(adj[i].begin(), adj[i].end());
    adj[i].erase(std::unique(adj[i].begin(), adj[i].end()), adj[i].end());
  }
  return adj;
}

std::vector<std::vector<int>> SysAdminConfig::line(int n) {
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i + 1 < n; ++i) {
    adj[i].push_back(i + 1);
    adj[i + 1].push_back(i);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());
  return adj;
}

SysAdminMdp::SysAdminMdp(const SysAdminConfig& cfg) : cfg_(cfg) {
  if (cfg.machines < 2) throw ConfigError("sysadmin: need at least 2 machines");
  if (cfg.machines > 63) throw ConfigError("sysadmin: at most 63 machines");
  if (static_cast<int>(cfg.adjacency.size()) != cfg.machines)
    throw ConfigError("sysadmin: adjacency needs one entry per machine");
  for (const auto& nb : cfg.adjacency)
    for (int j : nb)
      if (j < 0 || j >= cfg.machines)
        throw ConfigError("sysadmin: adjacency references unknown machine");
  for (double p : {cfg.p_fail, cfg.p_infect, cfg.p_reboot_success})
    if (p < 0.0 || p > 1.0)
      throw ConfigError("sysadmin: probabilities must be in [0, 1]");
  if (cfg.horizon < 1) throw ConfigError("sysadmin: horizon must be >= 1");

  for (int i = 0; i <= cfg.machines; ++i)
    actions_.push_back(static_cast<ActionId>(i));  // reboot 0..n-1, then no-op
  s0_ = (StateId{1} << cfg.machines) - 1;
}

std::span<const ActionId> SysAdminMdp::applicable_actions(StateId) const {
  return actions_;
}

bool SysAdminMdp::has_explicit_distribution() const {
  return cfg_.machines <= kMaxExplicitMachines;
}

double SysAdminMdp::run_probability(StateId s, ActionId a, int machine) const {
  if (static_cast<int>(a) == machine) return cfg_.p_reboot_success;
  if (!(s & (StateId{1} << machine))) return 0.0;  // down stays down
  int down_neighbours = 0;
  for (int j : cfg_.adjacency[machine])
    if (!(s & (StateId{1} << j))) ++down_neighbours;
  double stay = 1.0 - cfg_.p_fail;
  for (int k = 0; k < down_neighbours; ++k) stay *= 1.0 - cfg_.p_infect;
  return stay;
}

Transition SysAdminMdp::step(StateId s, ActionId a, RandomSource& rng) const {
  StateId next = 0;
  for (int m = 0; m < cfg_.machines; ++m) {
    double p = run_probability(s, a, m);
    bool up = p >= 1.0 ? true : (p <= 0.0 ? false : rng.next_bernoulli(p));
    if (up) next |= StateId{1} << m;
  }
  double reward = cfg_.reward_per_running * std::popcount(next);
  return {next, reward};
}

std::vector<Outcome> SysAdminMdp::outcome_distribution(StateId s,
                                                       ActionId a) const {
  if (!has_explicit_distribution())
    throw CapabilityError(
        "sysadmin: explicit distributions limited to n <= " +
        std::to_string(kMaxExplicitMachines) + " machines");

  std::vector<double> p_run(cfg_.machines);
  for (int m = 0; m < cfg_.machines; ++m) p_run[m] = run_probability(s, a, m);

  std::vector<Outcome> out;
  // Product over machines, pruning zero-probability branches.
  struct Frame {
    StateId mask;
    double prob;
  };
  std::vector<Frame> frontier{{0, 1.0}};
  std::vector<Frame> next_frontier;
  for (int m = 0; m < cfg_.machines; ++m) {
    next_frontier.clear();
    for (const Frame& f : frontier) {
      if (p_run[m] > 0.0)
        next_frontier.push_back({f.mask | (StateId{1} << m), f.prob * p_run[m]});
      if (p_run[m] < 1.0)
        next_frontier.push_back({f.mask, f.prob * (1.0 - p_run[m])});
    }
    frontier.swap(next_frontier);
  }
  out.reserve(frontier.size());
  for (const Frame& f : frontier)
    out.push_back({f.mask, f.prob,
                   cfg_.reward_per_running * std::popcount(f.mask)});
  std::sort(out.begin(), out.end(),
            [](const Outcome& a_, const Outcome& b_) { return a_.next < b_.next; });
  return out;
}

std::unique_ptr<GenerativeMdp> build_sysadmin(const SysAdminConfig& cfg) {
  return std::make_unique<SysAdminMdp>(cfg);
}

}  // namespace mcplan
