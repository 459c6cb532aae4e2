#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mcplan/config.hpp"
#include "mcplan/domains.hpp"
#include "mcplan/oracle.hpp"
#include "mcplan/planners.hpp"

namespace mcplan {

// Per-step budget schedule: a fixed iteration count, an explicit per-step
// iteration list, or wall-clock deadlines decreasing linearly from start_ms
// at the first step to end_ms at the last.
struct Schedule {
  enum class Kind { Iterations, IterationList, Deadline };
  Kind kind = Kind::Iterations;
  std::uint64_t iterations = 0;
  std::vector<std::uint64_t> iteration_list;
  double start_ms = 0.0;
  double end_ms = 0.0;

  Budget budget_for_step(int step, int total_steps) const;
};

enum class BenchMode { RegretCurve, Episode, ScoreTable };

struct NamedPlanner {
  std::string name;
  PlannerConfig config;
};

struct ExperimentSpec {
  std::string id;
  std::string domain_path;   // domain instance file
  std::string domain_name;   // derived from the file
  BenchMode mode = BenchMode::RegretCurve;
  std::vector<NamedPlanner> planners;
  std::vector<std::uint64_t> budgets;  // regret-curve points
  Schedule schedule;                   // episode / score-table per-step budget
  int runs = 1;
  std::uint64_t base_seed = 0;
  int workers = 1;
  bool receding_horizon = true;

  static ExperimentSpec load(const std::string& path);
  static ExperimentSpec from_config(const ConfigFile& cfg);
};

struct RunRecord {
  std::string planner;
  std::uint64_t seed_index = 0;
  std::vector<ActionId> recommendations;      // one per step
  std::vector<double> step_rewards;
  std::vector<std::uint64_t> budget_consumed; // iterations per step
  double total_reward = 0.0;
  double first_step_regret = -1.0;            // < 0 when no oracle attached
};

// One full episode: at step t, plan from the current state with horizon
// H - t (or the full H when receding_horizon is off) and execute the
// recommendation in an independently seeded environment.
RunRecord run_episode(const GenerativeMdp& mdp, const NamedPlanner& planner,
                      const Schedule& schedule, std::uint64_t base_seed,
                      std::uint64_t run_index, bool receding_horizon = true);

// Relative IPPC scores: (total - worst) / (best - worst); all-equal totals
// score 1 for everyone.
std::vector<double> ippc_score(const std::vector<double>& totals);

struct CsvRow {
  std::string experiment;
  std::string domain;
  std::string planner;
  std::string key;     // budget, seed, or run count depending on mode
  std::string metric;
  double value = 0.0;
  double stderr_ = -1.0;  // < 0 emits an empty field
};

void write_csv(std::ostream& os, const std::vector<CsvRow>& rows);

// Means regret of the recommended action per (planner, budget) over the
// seed set; needs the domain's explicit distributions for the oracle.
std::vector<CsvRow> regret_curve(const ExperimentSpec& spec,
                                 ProbeAudit* audit = nullptr);

// One row per (planner, seed) with the episode total, plus a mean row per
// planner.
std::vector<CsvRow> episode_table(const ExperimentSpec& spec);

// Runs the episode matrix, converts totals to per-run relative scores, and
// averages per planner.
std::vector<CsvRow> score_table(const ExperimentSpec& spec);

std::vector<CsvRow> run_experiment(const ExperimentSpec& spec,
                                   ProbeAudit* audit = nullptr);

double mean_of(const std::vector<double>& xs);
double stderr_of(const std::vector<double>& xs);

}  // namespace mcplan
