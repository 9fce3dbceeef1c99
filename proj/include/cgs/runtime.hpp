#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cgs/mcts.hpp"
#include "cgs/solver.hpp"
#include "cgs/states.hpp"

namespace cgs {

struct NoPathError : GraphError {
  using GraphError::GraphError;
};

enum class StrategyTag { Tree, TreeWarm, Expert, Random };
std::string_view strategy_tag_name(StrategyTag tag);

struct Strategy {
  StrategyTag tag = StrategyTag::Tree;
  std::string name = "tree";
  // Expert only: successive states after each step, strictly increasing,
  // ending at the full state (the empty start is implicit).
  std::vector<StateMask> expert_sequence;
};

Strategy tree_strategy();
Strategy tree_warm_strategy();
Strategy random_strategy();

// Steps are tuples of variable ids sampled jointly, in order. Each induced
// transition must survive pruning; violations are rejected with diagnostics.
Strategy expert_strategy(const ConstraintGraph& g, const TransitionTable& table, std::string name,
                         const std::vector<std::vector<std::string>>& steps);

// One line per step: comma-separated variable ids. Blank lines and # comments
// are skipped.
Strategy load_expert_file(const ConstraintGraph& g, const TransitionTable& table,
                          const std::string& path);

enum class BudgetMode { WallClock, CostProxy };

struct GenerateConfig {
  SolverConfig solver;
  RewardConfig reward;
  double exploration_c = 1.0;
  bool auto_lambda_enabled = true;
  int calibration_attempts = 20;
  BudgetMode budget_mode = BudgetMode::WallClock;
  double budget = 10.0;           // seconds, or proxy units in CostProxy mode
  std::int64_t max_attempts = 0;  // 0 = bounded only by the budget
  const WarmstartStore* warmstart = nullptr;
  int n_equiv = 10;
};

struct SampleRecord {
  std::vector<double> values;  // full stacked assignment
  std::vector<StateMask> sequence;
  double max_eq = 0;
  double max_ineq = 0;
  std::vector<double> step_durations;  // budget-clock units per transition
  double completed_at = 0;             // budget-clock units
  std::uint64_t seed = 0;

  std::span<const double> slice(const ConstraintGraph& g, int var) const {
    return std::span<const double>(values).subspan(g.var_offset(var), g.variable(var).dim);
  }
};

struct TransitionTally {
  StateMask from = 0, to = 0;
  std::int64_t attempts = 0, successes = 0;
};

struct RunReport {
  std::string graph_name;
  std::string strategy_name;
  std::uint64_t seed = 0;
  std::int64_t attempts = 0;
  std::vector<SampleRecord> samples;
  double wall_time = 0;           // budget-clock units actually spent
  double samples_per_second = 0;  // samples per clock unit
  double lambda_used = 0;
  std::vector<TransitionTally> tallies;
};

// Algorithm body: repeat strategy-driven attempts until the budget expires,
// collecting full feasible assignments. Throws NoPathError when the pruned
// table has no surviving path to the full state. In CostProxy mode every
// recorded quantity is derived from deterministic per-op costs, so reports
// are bitwise reproducible for a fixed seed.
RunReport generate(const ConstraintGraph& g, const TransitionTable& table,
                   const Strategy& strategy, const GenerateConfig& cfg, std::uint64_t seed,
                   WarmstartStore* harvest = nullptr);

std::string serialize_samples(const ConstraintGraph& g, std::span<const SampleRecord> samples);
std::vector<SampleRecord> parse_samples(const ConstraintGraph& g, std::string_view text);
void save_samples_file(const ConstraintGraph& g, std::span<const SampleRecord> samples,
                       const std::string& path);
std::vector<SampleRecord> load_samples_file(const ConstraintGraph& g, const std::string& path);

std::string report_csv_header();
std::string report_csv_row(const RunReport& r);
std::string tallies_csv(const ConstraintGraph& g, const RunReport& r);  // includes header

}  // namespace cgs
