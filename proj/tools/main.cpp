#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "mcplan/bench.hpp"

namespace {

using namespace mcplan;

// One line per probe: iteration, switching point, retract flag, the updated
// node, and any conversions that happened during the probe.
class TraceWriter : public ProbeAudit {
 public:
  explicit TraceWriter(std::ostream& os) : os_(os) {}

  void probe_begin(std::uint64_t iteration, int switch_depth) override {
    iteration_ = iteration;
    begin_switch_ = switch_depth;
    update_.clear();
    conversions_.clear();
  }
  void action_update(NodeKey k, ActionId a, double r) override {
    std::ostringstream ss;
    ss << '(' << k.state << ',' << k.depth << ",a" << a << ',' << r << ')';
    update_ = ss.str();
  }
  void node_converted(NodeKey k) override {
    std::ostringstream ss;
    ss << '(' << k.state << ',' << k.depth << ')';
    if (!conversions_.empty()) conversions_ += ' ';
    conversions_ += ss.str();
  }
  void probe_end(int final_switch, bool retract, int leaf_depth) override {
    os_ << "probe=" << iteration_ << " sigma=" << begin_switch_
        << " sigma_end=" << final_switch << " retract=" << (retract ? 1 : 0)
        << " leaf_depth=" << leaf_depth
        << " update=" << (update_.empty() ? "-" : update_)
        << " converted=" << (conversions_.empty() ? "-" : conversions_)
        << '\n';
  }

 private:
  std::ostream& os_;
  std::uint64_t iteration_ = 0;
  int begin_switch_ = 0;
  std::string update_;
  std::string conversions_;
};

int write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 1;
  }
  out << payload;
  return 0;
}

int run_mode(const std::string& spec_path, BenchMode mode,
             std::uint64_t seed_override, bool has_seed, int workers_override,
             const std::string& out_path, bool trace) {
  ExperimentSpec spec = ExperimentSpec::load(spec_path);
  if (spec.mode != mode) {
    std::cerr << "error: spec file mode does not match the subcommand\n";
    return 1;
  }
  if (has_seed) spec.base_seed = seed_override;
  if (workers_override > 0) spec.workers = workers_override;

  std::unique_ptr<std::ofstream> trace_file;
  std::unique_ptr<TraceWriter> tracer;
  if (trace) {
    std::ostream* sink = &std::cerr;
    if (!out_path.empty()) {
      trace_file = std::make_unique<std::ofstream>(out_path + ".trace");
      sink = trace_file.get();
    }
    tracer = std::make_unique<TraceWriter>(*sink);
  }

  auto rows = run_experiment(spec, tracer.get());
  std::ostringstream os;
  write_csv(os, rows);
  return write_output(out_path, os.str());
}

int run_solve(const std::string& spec_path, const std::string& out_path) {
  auto mdp = load_domain(spec_path);
  ValueTables tables = value_iteration(*mdp, mdp->horizon());
  std::ostringstream os;
  tables.write_flat(os);
  return write_output(out_path, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo planning benchmark runner"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int workers = 0;
  bool trace = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--spec", spec_path, "experiment or domain instance file")
        ->required();
    cmd->add_option("--out", out_path, "output path (default: stdout)");
    cmd->add_option("--seed", seed, "override the spec's base seed");
    cmd->add_option("--workers", workers, "worker threads for run batches");
    cmd->add_flag("--trace", trace, "write a probe-trace log");
  };

  CLI::App* regret = app.add_subcommand(
      "regret-curve", "mean simple regret per planner and budget");
  add_common(regret);
  CLI::App* episode =
      app.add_subcommand("episode", "full episodes with per-step replanning");
  add_common(episode);
  CLI::App* score = app.add_subcommand(
      "score-table", "relative scores over the episode matrix");
  add_common(score);
  CLI::App* solve =
      app.add_subcommand("solve", "dump exact Q tables for a domain instance");
  add_common(solve);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(spec_path, out_path);
    BenchMode mode = BenchMode::RegretCurve;
    if (episode->parsed()) mode = BenchMode::Episode;
    if (score->parsed()) mode = BenchMode::ScoreTable;
    bool has_seed = app.get_subcommand()->count("--seed") > 0;
    return run_mode(spec_path, mode, seed, has_seed, workers, out_path, trace);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
