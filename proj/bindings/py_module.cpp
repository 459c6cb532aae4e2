#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mcplan/bench.hpp"
#include "mcplan/brue_ic.hpp"
#include "mcplan/oracle.hpp"
#include "mcplan/policy.hpp"

namespace py = pybind11;
using namespace mcplan;

namespace {

PlannerConfig make_config(const std::string& kind, py::object c, double epsilon,
                          std::uint32_t phi, double psi,
                          const std::string& rule) {
  PlannerConfig cfg;
  cfg.kind = planner_kind_from_string(kind);
  if (!c.is_none()) cfg.exploration_c = c.cast<double>();
  cfg.epsilon = epsilon;
  cfg.pool_bound = phi;
  cfg.retire_threshold = psi;
  if (rule == "pooled")
    cfg.convert_rule = ConvertRule::Pooled;
  else if (rule == "per-policy")
    cfg.convert_rule = ConvertRule::PerPolicy;
  else
    throw ConfigError("unknown conversion rule '" + rule + "'");
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_mcplan, m) {
  m.doc() = "Monte-Carlo planning core: generative MDPs, exact oracle, and "
            "the UCT/BRUE planner family";

  py::register_exception<ContractViolation>(m, "ContractViolation",
                                            PyExc_ValueError);
  py::register_exception<CapabilityError>(m, "CapabilityError",
                                          PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<RandomSource>(m, "RandomSource")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_property_readonly("seed", &RandomSource::seed)
      .def("next_u64", &RandomSource::next_u64)
      .def("next_real01", &RandomSource::next_real01)
      .def("next_index", &RandomSource::next_index, py::arg("n"))
      .def("child",
           [](const RandomSource& r, const std::string& label, std::uint64_t a,
              std::uint64_t b) { return r.child(label, a, b); },
           py::arg("label"), py::arg("a") = 0, py::arg("b") = 0);

  py::class_<GenerativeMdp>(m, "GenerativeMdp")
      .def_property_readonly("initial_state", &GenerativeMdp::initial_state)
      .def_property_readonly("horizon", &GenerativeMdp::horizon)
      .def("applicable_actions",
           [](const GenerativeMdp& mdp, StateId s) {
             auto acts = mdp.applicable_actions(s);
             return std::vector<ActionId>(acts.begin(), acts.end());
           },
           py::arg("state"))
      .def("sample_transition",
           [](const GenerativeMdp& mdp, StateId s, ActionId a,
              RandomSource& rng) {
             Transition t = sample_transition(mdp, s, a, rng);
             return py::make_tuple(t.next, t.reward);
           },
           py::arg("state"), py::arg("action"), py::arg("rng"))
      .def("has_explicit_distribution",
           &GenerativeMdp::has_explicit_distribution)
      .def("outcome_distribution",
           [](const GenerativeMdp& mdp, StateId s, ActionId a) {
             std::vector<py::tuple> out;
             for (const Outcome& o : mdp.outcome_distribution(s, a))
               out.push_back(py::make_tuple(o.next, o.probability, o.reward));
             return out;
           },
           py::arg("state"), py::arg("action"))
      .def("is_absorbing", &GenerativeMdp::is_absorbing, py::arg("state"));

  m.def("load_domain",
        [](const std::string& path) { return load_domain(path); },
        py::arg("path"));

  py::class_<LazyPolicy>(m, "LazyPolicy")
      .def(py::init<const GenerativeMdp&, std::uint64_t>(), py::arg("mdp"),
           py::arg("seed"), py::keep_alive<1, 2>())
      .def_property_readonly("seed", &LazyPolicy::seed)
      .def("action_at", &LazyPolicy::action_at, py::arg("state"),
           py::arg("depth"));

  m.def("generate_random_policy",
        [](const GenerativeMdp& mdp, std::uint64_t seed) {
          return generate_random_policy(mdp, seed);
        },
        py::arg("mdp"), py::arg("seed"), py::keep_alive<0, 1>());
  m.def("execute_policy", &execute_policy, py::arg("mdp"), py::arg("policy"),
        py::arg("state"), py::arg("depth"), py::arg("rng"));

  py::class_<ValueTables>(m, "ValueTables")
      .def_property_readonly("horizon", &ValueTables::horizon)
      .def_property_readonly("states", &ValueTables::states)
      .def("covers", &ValueTables::covers, py::arg("state"))
      .def("value", &ValueTables::value, py::arg("state"), py::arg("steps_to_go"))
      .def("q_value", &ValueTables::q_value, py::arg("state"),
           py::arg("steps_to_go"), py::arg("action"))
      .def("optimal_actions", &ValueTables::optimal_actions, py::arg("state"),
           py::arg("steps_to_go"))
      .def("flat_text", [](const ValueTables& t) {
        std::ostringstream os;
        t.write_flat(os);
        return os.str();
      });

  py::class_<UniformValueTables>(m, "UniformValueTables")
      .def_property_readonly("horizon", &UniformValueTables::horizon)
      .def("value", &UniformValueTables::value, py::arg("state"),
           py::arg("steps_to_go"));

  m.def("value_iteration", &value_iteration, py::arg("mdp"), py::arg("horizon"));
  m.def("uniform_policy_value", &uniform_policy_value, py::arg("mdp"),
        py::arg("horizon"));
  m.def("simple_regret", &simple_regret, py::arg("tables"), py::arg("state"),
        py::arg("horizon"), py::arg("action"));

  m.def("enumerate_policies",
        [](const GenerativeMdp& mdp, int horizon, std::size_t max_policies) {
          PolicyEnumeration en = enumerate_policies(mdp, horizon, max_policies);
          std::vector<py::tuple> policies;
          policies.reserve(en.policies.size());
          for (const auto& p : en.policies)
            policies.push_back(py::make_tuple(p.choices, p.value));
          return py::make_tuple(en.decision_points, policies);
        },
        py::arg("mdp"), py::arg("horizon"),
        py::arg("max_policies") = std::size_t{1000000});

  m.def("plan",
        [](const GenerativeMdp& mdp, StateId state, int horizon,
           const std::string& kind, std::uint64_t iterations, py::object
           deadline_ms, std::uint64_t seed, py::object c, double epsilon,
           std::uint32_t phi, double psi, const std::string& rule) {
          PlannerConfig cfg = make_config(kind, c, epsilon, phi, psi, rule);
          Budget budget = deadline_ms.is_none()
                              ? Budget::iteration_count(iterations)
                              : Budget::deadline(deadline_ms.cast<double>());
          RandomSource rng(seed);
          return plan(mdp, state, horizon, cfg, budget, rng);
        },
        py::arg("mdp"), py::arg("state"), py::arg("horizon"),
        py::arg("kind") = "brue", py::arg("iterations") = 1000,
        py::arg("deadline_ms") = py::none(), py::arg("seed") = 0,
        py::arg("c") = py::none(), py::arg("epsilon") = 0.1,
        py::arg("phi") = 10, py::arg("psi") = 1e-4,
        py::arg("rule") = "pooled");

  m.def("ippc_score", &ippc_score, py::arg("totals"));

  m.def("run_experiment",
        [](const std::string& spec_path) {
          ExperimentSpec spec = ExperimentSpec::load(spec_path);
          std::ostringstream os;
          write_csv(os, run_experiment(spec));
          return os.str();
        },
        py::arg("spec_path"),
        "Runs an experiment spec file and returns its CSV as a string");
}
