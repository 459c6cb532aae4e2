#include "mcplan/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <ostream>
#include <thread>

namespace mcplan {

Budget Schedule::budget_for_step(int step, int total_steps) const {
  switch (kind) {
    case Kind::Iterations:
      return Budget::iteration_count(iterations);
    case Kind::IterationList: {
      std::size_t i = std::min<std::size_t>(step, iteration_list.size() - 1);
      return Budget::iteration_count(iteration_list[i]);
    }
    case Kind::Deadline: {
      if (total_steps <= 1) return Budget::deadline(start_ms);
      double frac = static_cast<double>(step) / (total_steps - 1);
      return Budget::deadline(start_ms + (end_ms - start_ms) * frac);
    }
  }
  return Budget::iteration_count(0);
}

namespace {

std::string path_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

PlannerConfig planner_config_from(const ConfigFile& cfg,
                                  const std::string& section) {
  PlannerConfig pc;
  pc.kind = planner_kind_from_string(cfg.get_string(section, "kind"));
  if (auto v = cfg.find(section, "c")) pc.exploration_c = std::stod(*v);
  if (auto v = cfg.find(section, "epsilon")) pc.epsilon = std::stod(*v);
  if (pc.kind == PlannerKind::BrueIc) {
    pc.pool_bound = static_cast<std::uint32_t>(cfg.get_int(section, "phi"));
    pc.retire_threshold = cfg.get_double(section, "psi");
    if (auto v = cfg.find(section, "rule")) {
      if (*v == "pooled")
        pc.convert_rule = ConvertRule::Pooled;
      else if (*v == "per-policy")
        pc.convert_rule = ConvertRule::PerPolicy;
      else
        throw ConfigError("unknown conversion rule '" + *v + "'");
    }
  }
  return pc;
}

// Runs fn(i) for i in [0, count) on the requested number of threads; each
// task writes only its own slot, so results are order-independent.
void parallel_for(int workers, std::size_t count,
                  const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
      fn(i);
  };
  std::vector<std::thread> pool;
  int n = std::min<int>(workers, static_cast<int>(count));
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

ExperimentSpec ExperimentSpec::load(const std::string& path) {
  ExperimentSpec spec = from_config(ConfigFile::parse_file(path));
  // Domain paths are relative to the spec file.
  std::filesystem::path dom(spec.domain_path);
  if (dom.is_relative())
    spec.domain_path = (std::filesystem::path(path).parent_path() / dom).string();
  spec.domain_name = path_stem(spec.domain_path);
  if (spec.id.empty()) spec.id = path_stem(path);
  return spec;
}

ExperimentSpec ExperimentSpec::from_config(const ConfigFile& cfg) {
  ExperimentSpec spec;
  if (auto v = cfg.find("", "id")) spec.id = *v;
  spec.domain_path = cfg.get_string("", "domain");
  spec.domain_name = path_stem(spec.domain_path);

  std::string mode = cfg.get_string("", "mode");
  if (mode == "regret-curve")
    spec.mode = BenchMode::RegretCurve;
  else if (mode == "episode")
    spec.mode = BenchMode::Episode;
  else if (mode == "score-table")
    spec.mode = BenchMode::ScoreTable;
  else
    throw ConfigError(cfg.origin() + ": unknown mode '" + mode + "'");

  spec.runs = static_cast<int>(cfg.get_int("", "runs"));
  spec.base_seed = cfg.get_u64("", "base_seed");
  if (auto v = cfg.find("", "workers")) spec.workers = std::stoi(*v);
  if (auto v = cfg.find("", "replan")) {
    if (*v == "receding")
      spec.receding_horizon = true;
    else if (*v == "fixed")
      spec.receding_horizon = false;
    else
      throw ConfigError(cfg.origin() + ": replan must be receding or fixed");
  }
  if (spec.runs < 1) throw ConfigError(cfg.origin() + ": runs must be >= 1");

  if (spec.mode == BenchMode::RegretCurve) {
    for (auto b : cfg.get_ints("", "budgets")) {
      if (b <= 0) throw ConfigError(cfg.origin() + ": budgets must be > 0");
      spec.budgets.push_back(static_cast<std::uint64_t>(b));
    }
    if (spec.budgets.empty())
      throw ConfigError(cfg.origin() + ": regret-curve needs budgets");
  } else {
    std::string bk = cfg.has("", "budget_kind") ? cfg.get_string("", "budget_kind")
                                                : "iterations";
    if (bk == "iterations") {
      if (cfg.has("", "budget_list")) {
        spec.schedule.kind = Schedule::Kind::IterationList;
        for (auto b : cfg.get_ints("", "budget_list"))
          spec.schedule.iteration_list.push_back(static_cast<std::uint64_t>(b));
      } else {
        spec.schedule.kind = Schedule::Kind::Iterations;
        spec.schedule.iterations = cfg.get_u64("", "budget");
      }
    } else if (bk == "deadline") {
      spec.schedule.kind = Schedule::Kind::Deadline;
      spec.schedule.start_ms = cfg.get_double("", "deadline_start_ms");
      spec.schedule.end_ms = cfg.get_double("", "deadline_end_ms");
    } else {
      throw ConfigError(cfg.origin() + ": budget_kind must be iterations or deadline");
    }
  }

  for (const auto& section : cfg.sections_with_prefix("planner ")) {
    NamedPlanner np;
    np.name = section.substr(8);
    np.config = planner_config_from(cfg, section);
    spec.planners.push_back(std::move(np));
  }
  if (spec.planners.empty())
    throw ConfigError(cfg.origin() + ": at least one [planner NAME] section required");
  return spec;
}

RunRecord run_episode(const GenerativeMdp& mdp, const NamedPlanner& planner,
                      const Schedule& schedule, std::uint64_t base_seed,
                      std::uint64_t run_index, bool receding_horizon) {
  int H = mdp.horizon();
  RandomSource base(base_seed);

  RunRecord rec;
  rec.planner = planner.name;
  rec.seed_index = run_index;

  StateId s = mdp.initial_state();
  for (int t = 0; t < H; ++t) {
    Budget budget = schedule.budget_for_step(t, H);
    int horizon = receding_horizon ? H - t : H;
    RandomSource plan_rng = base.child(planner.name + "/plan", run_index, t);
    ActionId a = plan(mdp, s, horizon, planner.config, budget, plan_rng);

    // The environment stream is independent of all planner randomness.
    RandomSource env_rng = base.child("env", run_index, t);
    Transition tr = mdp.step(s, a, env_rng);

    rec.recommendations.push_back(a);
    rec.step_rewards.push_back(tr.reward);
    rec.budget_consumed.push_back(
        budget.kind == Budget::Kind::Iterations ? budget.iterations : 0);
    rec.total_reward += tr.reward;
    s = tr.next;
  }
  return rec;
}

std::vector<double> ippc_score(const std::vector<double>& totals) {
  if (totals.size() < 2)
    throw ContractViolation("relative scoring needs at least 2 planners");
  double best = *std::max_element(totals.begin(), totals.end());
  double worst = *std::min_element(totals.begin(), totals.end());
  std::vector<double> scores(totals.size(), 1.0);
  if (best == worst) return scores;  // all tied: everyone scores 1
  for (std::size_t i = 0; i < totals.size(); ++i)
    scores[i] = (totals[i] - worst) / (best - worst);
  return scores;
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double stderr_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  double var = ss / static_cast<double>(xs.size() - 1);
  return std::sqrt(var / static_cast<double>(xs.size()));
}

void write_csv(std::ostream& os, const std::vector<CsvRow>& rows) {
  os << "experiment,domain,planner,key,metric,value,stderr\n";
  for (const CsvRow& r : rows) {
    os << r.experiment << ',' << r.domain << ',' << r.planner << ',' << r.key
       << ',' << r.metric << ',' << format_value(r.value) << ',';
    if (r.stderr_ >= 0.0) os << format_value(r.stderr_);
    os << '\n';
  }
}

std::vector<CsvRow> regret_curve(const ExperimentSpec& spec, ProbeAudit* audit) {
  auto mdp = load_domain(spec.domain_path);
  if (!mdp->has_explicit_distribution())
    throw CapabilityError("regret-curve requires a domain with explicit distributions");
  int H = mdp->horizon();
  StateId s0 = mdp->initial_state();
  ValueTables tables = value_iteration(*mdp, H);
  RandomSource base(spec.base_seed);

  std::vector<NamedPlanner> planners = spec.planners;
  std::sort(planners.begin(), planners.end(),
            [](const NamedPlanner& a, const NamedPlanner& b) {
              return a.name < b.name;
            });

  std::vector<CsvRow> rows;
  for (const NamedPlanner& np : planners) {
    for (std::uint64_t budget : spec.budgets) {
      std::vector<double> regrets(spec.runs);
      int workers = audit ? 1 : spec.workers;
      parallel_for(workers, spec.runs, [&](std::size_t i) {
        RandomSource rng = base.child(np.name + "/regret", budget, i);
        ActionId a = plan(*mdp, s0, H, np.config,
                          Budget::iteration_count(budget), rng, nullptr, audit);
        regrets[i] = simple_regret(tables, s0, H, a);
      });
      rows.push_back({spec.id, spec.domain_name, np.name, std::to_string(budget),
                      "mean_simple_regret", mean_of(regrets), stderr_of(regrets)});
    }
  }
  return rows;
}

namespace {

// Episode matrix shared by the episode and score-table modes.
std::vector<std::vector<RunRecord>> episode_matrix(const ExperimentSpec& spec,
                                                   const GenerativeMdp& mdp) {
  std::vector<std::vector<RunRecord>> records(spec.planners.size());
  for (std::size_t p = 0; p < spec.planners.size(); ++p) {
    records[p].resize(spec.runs);
    parallel_for(spec.workers, spec.runs, [&](std::size_t i) {
      records[p][i] = run_episode(mdp, spec.planners[p], spec.schedule,
                                  spec.base_seed, i, spec.receding_horizon);
    });
  }
  return records;
}

std::vector<std::size_t> planner_order(const ExperimentSpec& spec) {
  std::vector<std::size_t> order(spec.planners.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return spec.planners[a].name < spec.planners[b].name;
  });
  return order;
}

}  // namespace

std::vector<CsvRow> episode_table(const ExperimentSpec& spec) {
  auto mdp = load_domain(spec.domain_path);
  auto records = episode_matrix(spec, *mdp);

  std::vector<CsvRow> rows;
  for (std::size_t p : planner_order(spec)) {
    std::vector<double> totals;
    for (int i = 0; i < spec.runs; ++i) {
      const RunRecord& rec = records[p][i];
      rows.push_back({spec.id, spec.domain_name, rec.planner,
                      std::to_string(i), "total_reward", rec.total_reward, -1.0});
      totals.push_back(rec.total_reward);
    }
    rows.push_back({spec.id, spec.domain_name, spec.planners[p].name,
                    std::to_string(spec.runs), "mean_total_reward",
                    mean_of(totals), stderr_of(totals)});
  }
  return rows;
}

std::vector<CsvRow> score_table(const ExperimentSpec& spec) {
  if (spec.planners.size() < 2)
    throw ConfigError("score-table needs at least 2 planners");
  auto mdp = load_domain(spec.domain_path);
  auto records = episode_matrix(spec, *mdp);

  std::vector<std::vector<double>> scores(spec.planners.size());
  for (int i = 0; i < spec.runs; ++i) {
    std::vector<double> totals;
    totals.reserve(spec.planners.size());
    for (std::size_t p = 0; p < spec.planners.size(); ++p)
      totals.push_back(records[p][i].total_reward);
    std::vector<double> s = ippc_score(totals);
    for (std::size_t p = 0; p < spec.planners.size(); ++p)
      scores[p].push_back(s[p]);
  }

  std::vector<CsvRow> rows;
  for (std::size_t p : planner_order(spec)) {
    rows.push_back({spec.id, spec.domain_name, spec.planners[p].name,
                    std::to_string(spec.runs), "mean_ippc_score",
                    mean_of(scores[p]), stderr_of(scores[p])});
  }
  return rows;
}

std::vector<CsvRow> run_experiment(const ExperimentSpec& spec,
                                   ProbeAudit* audit) {
  switch (spec.mode) {
    case BenchMode::RegretCurve:
      return regret_curve(spec, audit);
    case BenchMode::Episode:
      return episode_table(spec);
    case BenchMode::ScoreTable:
      return score_table(spec);
  }
  throw ConfigError("unhandled benchmark mode");
}

}  // namespace mcplan
