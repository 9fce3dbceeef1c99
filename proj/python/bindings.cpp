#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cgs/metrics.hpp"
#include "cgs/runtime.hpp"
#include "cgs/scenarios.hpp"
#include "cgs/solver.hpp"
#include "cgs/states.hpp"

namespace py = pybind11;
using namespace cgs;

PYBIND11_MODULE(_core, m) {
  m.doc() = "constraint-graph sampling core";

  py::register_exception<GraphError>(m, "GraphError");

  py::class_<ConstraintGraph>(m, "ConstraintGraph")
      .def_property_readonly("name", &ConstraintGraph::name)
      .def_property_readonly("var_count", &ConstraintGraph::var_count)
      .def_property_readonly("ambient_dim", &ConstraintGraph::ambient_dim)
      .def_property_readonly("variable_ids",
                             [](const ConstraintGraph& g) {
                               std::vector<std::string> ids;
                               for (const auto& v : g.variables()) ids.push_back(v.id);
                               return ids;
                             })
      .def_property_readonly("constraint_ids",
                             [](const ConstraintGraph& g) {
                               std::vector<std::string> ids;
                               for (const auto& c : g.constraints()) ids.push_back(c.id);
                               return ids;
                             })
      .def("variable_index", &ConstraintGraph::variable_index)
      .def("var_offset", &ConstraintGraph::var_offset)
      .def("full_mask", &ConstraintGraph::full_mask)
      .def("has_witness", &ConstraintGraph::has_witness)
      .def("witness", &ConstraintGraph::witness)
      .def("serialize", [](const ConstraintGraph& g) { return serialize_graph(g); })
      .def("eval_residual",
           [](const ConstraintGraph& g, const std::string& cid, const std::vector<double>& x) {
             return eval_residual(g, cid, x);
           })
      .def("state_to_string",
           [](const ConstraintGraph& g, StateMask s) { return state_to_string(g, s); })
      .def("state_from_string", [](const ConstraintGraph& g, const std::string& text) {
        return state_from_string(g, text);
      });

  m.def("parse_graph", [](const std::string& text) { return parse_graph(text); });
  m.def("load_graph_file", &load_graph_file);
  m.def("build_scenario",
        [](const std::string& family, int instance) {
          return build_scenario(family_from_string(family), instance);
        },
        py::arg("family"), py::arg("instance") = 0);
  m.def("build_counting_graph",
        [](const std::string& family, int grasp_rows, int position_rows, int kin_rows) {
          return build_counting_graph(family_from_string(family), grasp_rows, position_rows,
                                      kin_rows);
        },
        py::arg("family"), py::arg("grasp_rows") = 2, py::arg("position_rows") = 2,
        py::arg("kin_rows") = 3);
  m.def("build_two_link_ik", &build_two_link_ik);
  m.def("builtin_expert_names",
        [](const std::string& family) { return builtin_expert_names(family_from_string(family)); });
  m.def("builtin_expert_steps", [](const std::string& family, int which) {
    return builtin_expert_steps(family_from_string(family), which);
  });

  py::class_<FeasReport>(m, "FeasReport")
      .def_readonly("max_eq", &FeasReport::max_eq)
      .def_readonly("max_ineq", &FeasReport::max_ineq)
      .def("feasible", &FeasReport::feasible, py::arg("tol_eq") = 1e-6,
           py::arg("tol_ineq") = 1e-8);
  m.def("evaluate_feasibility",
        [](const ConstraintGraph& g, const std::vector<double>& x, StateMask mask) {
          return evaluate_feasibility(g, x, mask);
        });

  py::class_<Transition>(m, "Transition")
      .def_readonly("from_state", &Transition::from)
      .def_readonly("to_state", &Transition::to)
      .def_readonly("new_vars", &Transition::new_vars)
      .def_readonly("new_dof", &Transition::new_dof)
      .def_readonly("new_eq_rows", &Transition::new_eq_rows)
      .def_property_readonly("pruned_by",
                             [](const Transition& t) {
                               return std::string(prune_rule_name(t.pruned_by));
                             })
      .def_property_readonly("surviving", &Transition::surviving);

  py::class_<TransitionTable>(m, "TransitionTable")
      .def_static("build_pruned", &TransitionTable::build_pruned)
      .def_static("enumerate_transitions", &TransitionTable::enumerate_transitions)
      .def_property_readonly("total", &TransitionTable::total)
      .def_property_readonly("surviving", &TransitionTable::surviving_count)
      .def("pruned_count",
           [](const TransitionTable& t, const std::string& rule) {
             for (auto r : {PruneRule::ZeroProbability, PruneRule::CondIndependence,
                            PruneRule::DeadEnd, PruneRule::Unreachable})
               if (prune_rule_name(r) == rule) return t.pruned_count(r);
             throw GraphError("unknown prune rule: " + rule);
           })
      .def_property_readonly("pruning_ratio", &TransitionTable::pruning_ratio)
      .def("transitions",
           [](const TransitionTable& t) {
             return std::vector<Transition>(t.all().begin(), t.all().end());
           })
      .def("find", &TransitionTable::find)
      .def("goal_reachable", &TransitionTable::goal_reachable)
      .def("to_dot", &TransitionTable::to_dot);

  py::class_<Rng>(m, "Rng").def(py::init<std::uint64_t>());

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("tol_eq", &SolverConfig::tol_eq)
      .def_readwrite("tol_ineq", &SolverConfig::tol_ineq)
      .def_readwrite("max_iters", &SolverConfig::max_iters)
      .def_readwrite("penalty_init", &SolverConfig::penalty_init)
      .def_readwrite("penalty_growth", &SolverConfig::penalty_growth)
      .def_readwrite("step_damping", &SolverConfig::step_damping)
      .def_readwrite("fd_step", &SolverConfig::fd_step);

  py::class_<SampleAttemptResult>(m, "SampleAttemptResult")
      .def_readonly("feasible", &SampleAttemptResult::feasible)
      .def_readonly("values", &SampleAttemptResult::values)
      .def_readonly("residual_norm", &SampleAttemptResult::residual_norm)
      .def_readonly("iters", &SampleAttemptResult::iters)
      .def_readonly("cost_proxy", &SampleAttemptResult::cost_proxy);

  m.def("conditional_sample",
        [](const ConstraintGraph& g, StateMask assigned, const std::vector<double>& x_full,
           StateMask new_vars, const SolverConfig& cfg, Rng& rng) {
          return conditional_sample(g, assigned, x_full, new_vars, cfg, rng);
        },
        py::arg("graph"), py::arg("assigned"), py::arg("x_full"), py::arg("new_vars"),
        py::arg("config"), py::arg("rng"));
  m.def("apply_values",
        [](const ConstraintGraph& g, StateMask new_vars, const std::vector<double>& values,
           std::vector<double> x_full) {
          apply_values(g, new_vars, values, x_full);
          return x_full;
        });

  py::enum_<BudgetMode>(m, "BudgetMode")
      .value("WallClock", BudgetMode::WallClock)
      .value("CostProxy", BudgetMode::CostProxy);

  py::class_<RewardConfig>(m, "RewardConfig")
      .def(py::init<>())
      .def_readwrite("lambda_weight", &RewardConfig::lambda)
      .def_readwrite("r_g", &RewardConfig::r_g)
      .def_readwrite("time_unit", &RewardConfig::time_unit)
      .def_readwrite("proxy_unit", &RewardConfig::proxy_unit);

  py::class_<WarmstartStore>(m, "WarmstartStore")
      .def(py::init<>())
      .def_readwrite("n_equiv", &WarmstartStore::n_equiv)
      .def_property_readonly("size",
                             [](const WarmstartStore& s) { return s.entries.size(); })
      .def_static("load_file", &WarmstartStore::load_file)
      .def("save_file", &WarmstartStore::save_file)
      .def_static("parse", &WarmstartStore::parse)
      .def("serialize", &WarmstartStore::serialize);

  py::class_<GenerateConfig>(m, "GenerateConfig")
      .def(py::init<>())
      .def_readwrite("solver", &GenerateConfig::solver)
      .def_readwrite("reward", &GenerateConfig::reward)
      .def_readwrite("exploration_c", &GenerateConfig::exploration_c)
      .def_readwrite("auto_lambda_enabled", &GenerateConfig::auto_lambda_enabled)
      .def_readwrite("calibration_attempts", &GenerateConfig::calibration_attempts)
      .def_readwrite("budget_mode", &GenerateConfig::budget_mode)
      .def_readwrite("budget", &GenerateConfig::budget)
      .def_readwrite("max_attempts", &GenerateConfig::max_attempts)
      .def_readwrite("n_equiv", &GenerateConfig::n_equiv);

  py::class_<Strategy>(m, "Strategy")
      .def_readonly("name", &Strategy::name);
  m.def("tree_strategy", &tree_strategy);
  m.def("tree_warm_strategy", &tree_warm_strategy);
  m.def("random_strategy", &random_strategy);
  m.def("expert_strategy", &expert_strategy);

  py::class_<SampleRecord>(m, "SampleRecord")
      .def_readonly("values", &SampleRecord::values)
      .def_readonly("sequence", &SampleRecord::sequence)
      .def_readonly("max_eq", &SampleRecord::max_eq)
      .def_readonly("max_ineq", &SampleRecord::max_ineq)
      .def_readonly("completed_at", &SampleRecord::completed_at)
      .def_readonly("seed", &SampleRecord::seed);

  py::class_<TransitionTally>(m, "TransitionTally")
      .def_readonly("from_state", &TransitionTally::from)
      .def_readonly("to_state", &TransitionTally::to)
      .def_readonly("attempts", &TransitionTally::attempts)
      .def_readonly("successes", &TransitionTally::successes);

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("graph_name", &RunReport::graph_name)
      .def_readonly("strategy_name", &RunReport::strategy_name)
      .def_readonly("seed", &RunReport::seed)
      .def_readonly("attempts", &RunReport::attempts)
      .def_readonly("samples", &RunReport::samples)
      .def_readonly("wall_time", &RunReport::wall_time)
      .def_readonly("samples_per_second", &RunReport::samples_per_second)
      .def_readonly("lambda_used", &RunReport::lambda_used)
      .def_readonly("tallies", &RunReport::tallies);

  // The warmstart pointer in GenerateConfig stays C++-side: pass the store
  // explicitly and it is wired up for the duration of the call.
  m.def("generate",
        [](const ConstraintGraph& g, const TransitionTable& table, const Strategy& strategy,
           GenerateConfig cfg, std::uint64_t seed, const WarmstartStore* warmstart,
           WarmstartStore* harvest) {
          cfg.warmstart = warmstart;
          return generate(g, table, strategy, cfg, seed, harvest);
        },
        py::arg("graph"), py::arg("table"), py::arg("strategy"), py::arg("config"),
        py::arg("seed"), py::arg("warmstart") = nullptr, py::arg("harvest") = nullptr);

  m.def("serialize_samples",
        [](const ConstraintGraph& g, const std::vector<SampleRecord>& samples) {
          return serialize_samples(g, samples);
        });
  m.def("parse_samples", [](const ConstraintGraph& g, const std::string& text) {
    return parse_samples(g, text);
  });

  py::class_<CoverageConfig>(m, "CoverageConfig")
      .def(py::init<>())
      .def_readwrite("bins_per_dim", &CoverageConfig::bins_per_dim)
      .def_readwrite("normalize_against", &CoverageConfig::normalize_against);

  py::class_<VariableCoverage>(m, "VariableCoverage")
      .def_readonly("variable", &VariableCoverage::variable)
      .def_readonly("occupied", &VariableCoverage::occupied)
      .def_readonly("out_of_bounds", &VariableCoverage::out_of_bounds);

  py::class_<CoverageReport>(m, "CoverageReport")
      .def_readonly("per_variable", &CoverageReport::per_variable)
      .def_readonly("sample_count", &CoverageReport::sample_count)
      .def("occupied",
           [](const CoverageReport& r, const std::string& var) { return r.occupied(var); });

  m.def("projected_coverage",
        [](const std::vector<SampleRecord>& samples, const ConstraintGraph& g,
           const CoverageConfig& cfg) { return projected_coverage(samples, g, cfg); },
        py::arg("samples"), py::arg("graph"), py::arg("config") = CoverageConfig{});
}
