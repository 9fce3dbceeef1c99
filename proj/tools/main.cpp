// Command line front end: enumerate / sample / bench / coverage.
//
// Exit codes: 0 success, 2 file parse error, 3 config or graph validation
// error, 4 no surviving path to the full state.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cgs/bench.hpp"
#include "cgs/metrics.hpp"
#include "cgs/runtime.hpp"
#include "cgs/scenarios.hpp"
#include "cgs/states.hpp"

namespace {

using namespace cgs;

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNoPath = 4;

// Graph files resolve against CGS_FIXTURES when not found directly.
std::string resolve_graph_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  if (path.find('/') == std::string::npos) {
    if (const char* dir = std::getenv("CGS_FIXTURES")) {
      fs::path p = fs::path(dir) / path;
      if (fs::exists(p)) return p.string();
    }
  }
  return path;  // let the loader produce the error
}

// "--scenario family:index" or the analytic "two_link_ik".
ConstraintGraph load_scenario(const std::string& sel) {
  auto colon = sel.find(':');
  std::string fam = sel.substr(0, colon);
  if (fam == "two_link_ik") return build_two_link_ik();
  int idx = 0;
  if (colon != std::string::npos) idx = std::atoi(sel.c_str() + colon + 1);
  if (idx < 0 || idx >= kInstancesPerFamily)
    throw GraphError("scenario index out of range: " + sel);
  return build_scenario(family_from_string(fam), idx);
}

struct GraphSource {
  std::string graph_file;
  std::string scenario;

  // One of the two is required; load() reports the miss so --help stays usable.
  void add_flags(CLI::App* cmd) {
    auto* a = cmd->add_option("--graph", graph_file, "problem description file");
    auto* b = cmd->add_option("--scenario", scenario, "builtin scenario, family:index");
    a->excludes(b);
  }

  ConstraintGraph load() const {
    if (!scenario.empty()) return load_scenario(scenario);
    if (!graph_file.empty()) return load_graph_file(resolve_graph_path(graph_file));
    throw GraphError("need --graph or --scenario");
  }
};

Strategy make_strategy(const ConstraintGraph& g, const TransitionTable& table,
                       const std::string& spec) {
  if (spec == "tree") return tree_strategy();
  if (spec == "tree_warm") return tree_warm_strategy();
  if (spec == "random") return random_strategy();
  if (spec.rfind("expert:", 0) == 0) {
    std::string name = spec.substr(7);
    Family f = family_from_string(g.name().substr(0, g.name().rfind('_')));
    auto names = builtin_expert_names(f);
    for (int i = 0; i < static_cast<int>(names.size()); ++i)
      if (names[i] == name) return expert_strategy(g, table, name, builtin_expert_steps(f, i));
    throw GraphError("unknown builtin expert: " + name);
  }
  if (spec.rfind("expert-file:", 0) == 0)
    return load_expert_file(g, table, spec.substr(12));
  throw GraphError("unknown strategy: " + spec +
                   " (expected tree|tree_warm|random|expert:<name>|expert-file:<path>)");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write file: " + path);
  out << content;
}

// Flags shared by sample and bench that feed GenerateConfig.
struct RunFlags {
  double budget = 10.0;
  std::string budget_mode = "wall";
  double exploration_c = 1.0;
  bool no_auto_lambda = false;
  double lambda = 0.5;
  std::int64_t max_attempts = 0;
  double tol_eq = 1e-6;
  double tol_ineq = 1e-8;
  int max_iters = 100;
  std::string warmstart_in;
  int n_equiv = 10;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--budget", budget, "budget per run (seconds, or proxy units)");
    cmd->add_option("--budget-mode", budget_mode, "wall or proxy")
        ->check(CLI::IsMember({"wall", "proxy"}));
    cmd->add_option("--exploration-c", exploration_c, "UCT exploration constant");
    cmd->add_flag("--no-auto-lambda", no_auto_lambda, "disable reward weight calibration");
    cmd->add_option("--lambda", lambda, "fixed reward weight when calibration is off");
    cmd->add_option("--max-attempts", max_attempts, "stop after this many attempts (0 = off)");
    cmd->add_option("--tol-eq", tol_eq, "equality tolerance");
    cmd->add_option("--tol-ineq", tol_ineq, "inequality tolerance");
    cmd->add_option("--max-iters", max_iters, "projection iteration cap");
    cmd->add_option("--warmstart-in", warmstart_in, "warmstart store to read (tree_warm)");
    cmd->add_option("--n-equiv", n_equiv, "equivalent visit count for warmstart priors");
  }

  GenerateConfig to_config(const WarmstartStore* store) const {
    GenerateConfig cfg;
    cfg.budget = budget;
    cfg.budget_mode = budget_mode == "proxy" ? BudgetMode::CostProxy : BudgetMode::WallClock;
    // Proxy budgets imply proxy rewards so runs stay deterministic.
    cfg.reward.cost_source = cfg.budget_mode == BudgetMode::CostProxy
                                 ? RewardConfig::CostSource::CostProxy
                                 : RewardConfig::CostSource::WallClock;
    cfg.exploration_c = exploration_c;
    cfg.auto_lambda_enabled = !no_auto_lambda;
    cfg.reward.lambda = lambda;
    cfg.max_attempts = max_attempts;
    cfg.solver.tol_eq = tol_eq;
    cfg.solver.tol_ineq = tol_ineq;
    cfg.solver.max_iters = max_iters;
    cfg.warmstart = store;
    cfg.n_equiv = n_equiv;
    return cfg;
  }

  std::string snapshot() const {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "budget=%.17g\nbudget_mode=%s\nexploration_c=%.17g\nauto_lambda=%d\n"
                  "lambda=%.17g\nmax_attempts=%lld\ntol_eq=%.17g\ntol_ineq=%.17g\n"
                  "max_iters=%d\nwarmstart_in=%s\nn_equiv=%d\n",
                  budget, budget_mode.c_str(), exploration_c, no_auto_lambda ? 0 : 1, lambda,
                  static_cast<long long>(max_attempts), tol_eq, tol_ineq, max_iters,
                  warmstart_in.c_str(), n_equiv);
    return buf;
  }
};

void print_enumeration(const ConstraintGraph& g, const TransitionTable& table) {
  std::printf("%s: %lld total, %lld surviving, %.2f%% pruned\n", g.name().c_str(),
              static_cast<long long>(table.total()),
              static_cast<long long>(table.surviving_count()), 100.0 * table.pruning_ratio());
  for (auto rule : {PruneRule::ZeroProbability, PruneRule::CondIndependence, PruneRule::DeadEnd,
                    PruneRule::Unreachable})
    std::printf("  %s: %lld\n", std::string(prune_rule_name(rule)).c_str(),
                static_cast<long long>(table.pruned_count(rule)));
}

int cmd_enumerate(const GraphSource& src, const std::string& counting_family, int grasp_rows,
                  int position_rows, int kin_rows, bool sweep, const std::string& dot_out) {
  if (!counting_family.empty()) {
    Family f = family_from_string(counting_family);
    if (sweep) {
      std::printf("sensitivity sweep over equality row assignments (kin_rows=%d)\n", kin_rows);
      for (int gr = 1; gr <= 3; ++gr)
        for (int pr = 1; pr <= 3; ++pr) {
          auto g = build_counting_graph(f, gr, pr, kin_rows);
          auto t = TransitionTable::build_pruned(g);
          std::printf("  grasp_rows=%d position_rows=%d surviving=%lld\n", gr, pr,
                      static_cast<long long>(t.surviving_count()));
        }
      return 0;
    }
    auto g = build_counting_graph(f, grasp_rows, position_rows, kin_rows);
    auto t = TransitionTable::build_pruned(g);
    print_enumeration(g, t);
    if (!dot_out.empty()) write_file(dot_out, t.to_dot(g));
    return 0;
  }
  ConstraintGraph g = src.load();
  auto t = TransitionTable::build_pruned(g);
  print_enumeration(g, t);
  if (!dot_out.empty()) write_file(dot_out, t.to_dot(g));
  return 0;
}

int cmd_sample(const GraphSource& src, const RunFlags& flags, const std::string& strategy_spec,
               std::uint64_t seed, const std::string& out_file, const std::string& report_file,
               const std::string& tallies_file, const std::string& warmstart_out) {
  ConstraintGraph g = src.load();
  auto table = TransitionTable::build_pruned(g);
  Strategy strategy = make_strategy(g, table, strategy_spec);

  WarmstartStore store;
  if (!flags.warmstart_in.empty()) store = WarmstartStore::load_file(flags.warmstart_in);
  if (strategy.tag == StrategyTag::TreeWarm && flags.warmstart_in.empty())
    throw GraphError("tree_warm needs --warmstart-in");
  GenerateConfig cfg = flags.to_config(flags.warmstart_in.empty() ? nullptr : &store);

  WarmstartStore harvest;
  RunReport report = generate(g, table, strategy, cfg, seed,
                              warmstart_out.empty() ? nullptr : &harvest);

  if (!out_file.empty()) save_samples_file(g, report.samples, out_file);
  if (!report_file.empty()) write_file(report_file, report_csv_header() + report_csv_row(report));
  if (!tallies_file.empty()) write_file(tallies_file, tallies_csv(g, report));
  if (!warmstart_out.empty()) harvest.save_file(warmstart_out);
  std::printf("%s", report_csv_header().c_str());
  std::printf("%s", report_csv_row(report).c_str());
  return 0;
}

int cmd_bench(const std::string& family, const std::string& instances_csv,
              const std::string& strategies_csv, const std::string& seeds_csv,
              const RunFlags& flags, const std::string& out_dir, int workers, int bins,
              double rate_window) {
  namespace fs = std::filesystem;
  Family f = family_from_string(family);
  std::vector<int> instances;
  if (instances_csv.empty()) {
    for (int i = 0; i < kInstancesPerFamily; ++i) instances.push_back(i);
  } else {
    for (const auto& tok : split_list(instances_csv)) instances.push_back(std::atoi(tok.c_str()));
  }
  auto strategy_specs = split_list(strategies_csv);
  std::vector<std::uint64_t> seeds;
  for (const auto& tok : split_list(seeds_csv)) seeds.push_back(std::strtoull(tok.c_str(), nullptr, 10));
  if (strategy_specs.empty() || seeds.empty() || flags.budget <= 0)
    throw GraphError("bench needs at least one strategy, one seed, and a positive budget");

  WarmstartStore store;
  if (!flags.warmstart_in.empty()) store = WarmstartStore::load_file(flags.warmstart_in);
  GenerateConfig cfg = flags.to_config(flags.warmstart_in.empty() ? nullptr : &store);

  // Graphs and tables live here; cells borrow them.
  std::vector<std::unique_ptr<ConstraintGraph>> graphs;
  std::vector<std::unique_ptr<TransitionTable>> tables;
  std::vector<BenchCell> cells;
  struct CellKey {
    int instance;
    std::string strategy;
    std::uint64_t seed;
  };
  std::vector<CellKey> keys;
  for (int idx : instances) {
    graphs.push_back(std::make_unique<ConstraintGraph>(build_scenario(f, idx)));
    tables.push_back(std::make_unique<TransitionTable>(TransitionTable::build_pruned(*graphs.back())));
    for (const auto& spec : strategy_specs) {
      Strategy strat = make_strategy(*graphs.back(), *tables.back(), spec);
      if (strat.tag == StrategyTag::TreeWarm && flags.warmstart_in.empty())
        throw GraphError("tree_warm needs --warmstart-in");
      for (auto seed : seeds) {
        cells.push_back({graphs.back().get(), tables.back().get(), strat, seed, cfg});
        keys.push_back({idx, spec, seed});
      }
    }
  }

  fs::create_directories(out_dir);
  BenchResult result = run_bench(cells, workers);

  // Per-cell table; failed cells keep their row with the error recorded.
  std::string runs = "graph,strategy,seed,ok,attempts,samples,wall_time,samples_per_second,lambda,error\n";
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    const auto& cell = result.cells[i];
    char buf[256];
    if (cell.ok) {
      const auto& r = cell.report;
      std::snprintf(buf, sizeof buf, "%s,%s,%llu,1,%lld,%lld,%.17g,%.17g,%.17g,\n",
                    r.graph_name.c_str(), r.strategy_name.c_str(),
                    static_cast<unsigned long long>(r.seed), static_cast<long long>(r.attempts),
                    static_cast<long long>(r.samples.size()), r.wall_time, r.samples_per_second,
                    r.lambda_used);
    } else {
      std::snprintf(buf, sizeof buf, "%s_%d,%s,%llu,0,0,0,0,0,0,\"%s\"\n", family.c_str(),
                    keys[i].instance, keys[i].strategy.c_str(),
                    static_cast<unsigned long long>(keys[i].seed), cell.error.c_str());
    }
    runs += buf;
  }
  write_file((fs::path(out_dir) / "runs.csv").string(), runs);

  // Coverage per instance and seed, normalized within the (instance, seed)
  // group; cells are ordered instance-major, then strategy, then seed.
  CoverageConfig cov;
  cov.bins_per_dim = bins;
  const std::size_t n_seeds = seeds.size(), n_strat = strategy_specs.size();
  auto cell_at = [&](std::size_t gi, std::size_t si, std::size_t ki) -> const BenchCellResult& {
    return result.cells[(gi * n_strat + si) * n_seeds + ki];
  };
  std::string coverage = "graph,seed,strategy,variable,occupied_cells,normalized\n";
  std::string rates = "graph,strategy,seed,time,samples_per_unit\n";
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    for (std::size_t ki = 0; ki < n_seeds; ++ki) {
      std::vector<StrategyCoverage> group;
      for (std::size_t si = 0; si < n_strat; ++si) {
        const auto& cell = cell_at(gi, si, ki);
        if (!cell.ok) continue;
        group.push_back({cell.report.strategy_name,
                         projected_coverage(cell.report.samples, *graphs[gi], cov)});
      }
      for (const auto& row : compare_coverage(group, *graphs[gi], cov)) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s,%llu,%s,%s,%lld,%.17g\n", graphs[gi]->name().c_str(),
                      static_cast<unsigned long long>(seeds[ki]), row.strategy.c_str(),
                      row.variable.c_str(), static_cast<long long>(row.occupied), row.normalized);
        coverage += buf;
      }
    }
    for (std::size_t si = 0; si < n_strat; ++si)
      for (std::size_t ki = 0; ki < n_seeds; ++ki) {
        const auto& cell = cell_at(gi, si, ki);
        if (!cell.ok) continue;
        for (const auto& [t, rate] : rate_curve(cell.report, rate_window)) {
          char buf[256];
          std::snprintf(buf, sizeof buf, "%s,%s,%llu,%.17g,%.17g\n",
                        cell.report.graph_name.c_str(), cell.report.strategy_name.c_str(),
                        static_cast<unsigned long long>(cell.report.seed), t, rate);
          rates += buf;
        }
      }
  }
  write_file((fs::path(out_dir) / "coverage.csv").string(), coverage);
  write_file((fs::path(out_dir) / "rates.csv").string(), rates);

  // Everything needed to reproduce the run.
  std::string snap = "family=" + family + "\ninstances=";
  for (std::size_t i = 0; i < instances.size(); ++i)
    snap += (i ? "," : "") + std::to_string(instances[i]);
  snap += "\nstrategies=" + strategies_csv + "\nseeds=" + seeds_csv + "\n" + flags.snapshot();
  snap += "workers=" + std::to_string(workers) + "\nbins=" + std::to_string(bins) + "\n";
  snap += "rate_window=" + std::to_string(rate_window) + "\n";
  write_file((fs::path(out_dir) / "config.txt").string(), snap);

  std::printf("bench: %zu cells, %d failed, results in %s\n", cells.size(),
              result.failure_count(), out_dir.c_str());
  return 0;
}

int cmd_coverage(const GraphSource& src, const std::string& samples_csv,
                 const std::string& labels_csv, int bins, const std::string& normalize_against,
                 const std::string& out_file) {
  ConstraintGraph g = src.load();
  auto files = split_list(samples_csv);
  auto labels = split_list(labels_csv);
  if (labels.empty())
    for (std::size_t i = 0; i < files.size(); ++i) labels.push_back("run" + std::to_string(i));
  if (labels.size() != files.size())
    throw GraphError("coverage: --labels must match --samples in length");

  CoverageConfig cfg;
  cfg.bins_per_dim = bins;
  cfg.normalize_against = normalize_against;
  std::vector<StrategyCoverage> reports;
  for (std::size_t i = 0; i < files.size(); ++i) {
    auto samples = load_samples_file(g, files[i]);
    reports.push_back({labels[i], projected_coverage(samples, g, cfg)});
  }
  std::string csv = coverage_csv(compare_coverage(reports, g, cfg));
  if (out_file.empty())
    std::printf("%s", csv.c_str());
  else
    write_file(out_file, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constraint-graph sampling toolkit"};
  app.require_subcommand(1);

  GraphSource enum_src, sample_src, cov_src;
  std::string counting_family, dot_out;
  int grasp_rows = 2, position_rows = 2, kin_rows = 3;
  bool sweep = false;

  auto* enumerate = app.add_subcommand("enumerate", "enumerate and prune the transition lattice");
  enum_src.add_flags(enumerate);
  enumerate->add_option("--counting", counting_family,
                        "use the counting graph of a family instead of an instance");
  enumerate->add_option("--grasp-rows", grasp_rows, "equality rows per grasp factor");
  enumerate->add_option("--position-rows", position_rows, "equality rows per position factor");
  enumerate->add_option("--kin-rows", kin_rows, "equality rows per kinematics factor");
  enumerate->add_flag("--sweep", sweep, "3x3 row-assignment sensitivity sweep (with --counting)");
  enumerate->add_option("--dot", dot_out, "write the pruned lattice as DOT");

  RunFlags sample_flags;
  std::string strategy_spec = "tree";
  std::uint64_t seed = 0;
  std::string out_file, report_file, tallies_file, warmstart_out;
  auto* sample = app.add_subcommand("sample", "generate samples with one strategy");
  sample_src.add_flags(sample);
  sample_flags.add_flags(sample);
  sample->add_option("--strategy", strategy_spec,
                     "tree|tree_warm|random|expert:<name>|expert-file:<path>");
  sample->add_option("--seed", seed, "rng seed");
  sample->add_option("--out", out_file, "write samples here");
  sample->add_option("--report", report_file, "write the run report CSV here");
  sample->add_option("--tallies", tallies_file, "write per-transition tallies CSV here");
  sample->add_option("--warmstart-out", warmstart_out, "harvest the search tree into this store");

  RunFlags bench_flags;
  std::string family, instances_csv, strategies_csv = "tree,random", seeds_csv = "0";
  std::string out_dir = "bench_out";
  int workers = 1, bins = 10;
  double rate_window = 1.0;
  auto* bench = app.add_subcommand("bench", "instance x strategy x seed benchmark matrix");
  bench->add_option("--family", family, "scenario family")->required();
  bench->add_option("--instances", instances_csv, "instance indices (default all)");
  bench->add_option("--strategies", strategies_csv, "comma separated strategy specs");
  bench->add_option("--seeds", seeds_csv, "comma separated seeds");
  bench_flags.add_flags(bench);
  bench->add_option("--out-dir", out_dir, "output directory");
  bench->add_option("--workers", workers, "parallel cells");
  bench->add_option("--bins", bins, "coverage bins per dimension");
  bench->add_option("--rate-window", rate_window, "rate curve window, clock units");

  std::string samples_csv, labels_csv, normalize_against = "tree", cov_out;
  int cov_bins = 10;
  auto* coverage = app.add_subcommand("coverage", "projected coverage of sample files");
  cov_src.add_flags(coverage);
  coverage->add_option("--samples", samples_csv, "comma separated sample files")->required();
  coverage->add_option("--labels", labels_csv, "labels for the sample files");
  coverage->add_option("--bins", cov_bins, "bins per dimension");
  coverage->add_option("--normalize-against", normalize_against, "reference label");
  coverage->add_option("--out", cov_out, "write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (enumerate->parsed())
      return cmd_enumerate(enum_src, counting_family, grasp_rows, position_rows, kin_rows, sweep,
                           dot_out);
    if (sample->parsed())
      return cmd_sample(sample_src, sample_flags, strategy_spec, seed, out_file, report_file,
                        tallies_file, warmstart_out);
    if (bench->parsed())
      return cmd_bench(family, instances_csv, strategies_csv, seeds_csv, bench_flags, out_dir,
                       workers, bins, rate_window);
    if (coverage->parsed())
      return cmd_coverage(cov_src, samples_csv, labels_csv, cov_bins, normalize_against, cov_out);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitParse;
  } catch (const NoPathError& e) {
    std::fprintf(stderr, "no path: %s\n", e.what());
    return kExitNoPath;
  } catch (const GraphError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return 0;
}
