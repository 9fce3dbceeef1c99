#include "cgs/runtime.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace cgs {

namespace {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct BudgetClock {
  BudgetMode mode;
  double budget;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double proxy_spent = 0;

  double now_units() const {
    if (mode == BudgetMode::CostProxy) return proxy_spent;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  bool expired() const { return now_units() >= budget; }
  // Deterministic op cost in clock units; failed zero-iteration ops still
  // consume one unit so proxy budgets always make progress.
  double op_units(const SampleAttemptResult& r) const {
    if (mode == BudgetMode::CostProxy)
      return static_cast<double>(std::max<std::int64_t>(1, r.cost_proxy));
    return r.elapsed_seconds;
  }
  void charge(const SampleAttemptResult& r) {
    if (mode == BudgetMode::CostProxy) proxy_spent += op_units(r);
  }
};

}  // namespace

std::string_view strategy_tag_name(StrategyTag tag) {
  switch (tag) {
    case StrategyTag::Tree: return "tree";
    case StrategyTag::TreeWarm: return "tree_warm";
    case StrategyTag::Expert: return "expert";
    default: return "random";
  }
}

Strategy tree_strategy() { return {StrategyTag::Tree, "tree", {}}; }
Strategy tree_warm_strategy() { return {StrategyTag::TreeWarm, "tree_warm", {}}; }
Strategy random_strategy() { return {StrategyTag::Random, "random", {}}; }

Strategy expert_strategy(const ConstraintGraph& g, const TransitionTable& table, std::string name,
                         const std::vector<std::vector<std::string>>& steps) {
  Strategy s;
  s.tag = StrategyTag::Expert;
  s.name = std::move(name);
  if (steps.empty()) throw GraphError("expert " + s.name + ": needs at least one step");
  StateMask cur = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    StateMask add = 0;
    for (const auto& vid : steps[i]) {
      int v = g.variable_index(vid);
      if (v < 0) throw GraphError("expert " + s.name + ": unknown variable " + vid);
      add |= 1u << v;
    }
    if (add == 0 || (add & cur) != 0)
      throw GraphError("expert " + s.name + ": step " + std::to_string(i + 1) +
                       " must add new variables only");
    StateMask next = cur | add;
    int idx = table.find(cur, next);
    if (idx < 0 || !table.at(idx).surviving())
      throw GraphError("expert " + s.name + ": step " + std::to_string(i + 1) + " transition " +
                       state_to_string(g, cur) + " -> " + state_to_string(g, next) +
                       " is pruned or invalid");
    s.expert_sequence.push_back(next);
    cur = next;
  }
  if (cur != g.full_mask())
    throw GraphError("expert " + s.name + ": sequence ends at " + state_to_string(g, cur) +
                     ", not the full state");
  return s;
}

Strategy load_expert_file(const ConstraintGraph& g, const TransitionTable& table,
                          const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open expert file: " + path);
  std::vector<std::vector<std::string>> steps;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> ids;
    while (std::getline(ls, tok, ',')) {
      std::istringstream trim(tok);
      std::string id;
      if (trim >> id) ids.push_back(id);
    }
    if (ids.empty() || ids[0][0] == '#') continue;
    steps.push_back(std::move(ids));
  }
  return expert_strategy(g, table, "expert:" + path, steps);
}

RunReport generate(const ConstraintGraph& g, const TransitionTable& table,
                   const Strategy& strategy, const GenerateConfig& cfg, std::uint64_t seed,
                   WarmstartStore* harvest) {
  if (cfg.budget <= 0) throw GraphError("generate: budget must be positive");
  if (!table.goal_reachable())
    throw NoPathError("graph " + g.name() + ": no surviving path from {} to the full state");
  if (strategy.tag == StrategyTag::Expert && strategy.expert_sequence.empty())
    throw GraphError("expert strategy without a sequence");

  RunReport report;
  report.graph_name = g.name();
  report.strategy_name = strategy.name;
  report.seed = seed;

  Rng rng(seed);
  BudgetClock clock{cfg.budget_mode, cfg.budget};
  // A proxy budget implies proxy-derived rewards; the determinism guarantee
  // would not hold if rewards kept reading the wall clock.
  RewardConfig base_reward = cfg.reward;
  if (cfg.budget_mode == BudgetMode::CostProxy)
    base_reward.cost_source = RewardConfig::CostSource::CostProxy;
  std::map<int, TransitionTally> tallies;
  const StateMask full = table.full_mask();
  const int step_cap = table.var_count() + 1;

  std::vector<double> x(g.ambient_dim(), 0.0);
  std::vector<double> step_units;
  std::vector<StateMask> sequence;

  // Executes one transition on the current attempt state; shared by every
  // strategy so costs and tallies are booked identically.
  auto run_op = [&](const Transition& t, Rng& stream) {
    SampleAttemptResult r = conditional_sample(g, t.from, x, t.new_vars, cfg.solver, stream);
    clock.charge(r);
    step_units.push_back(clock.op_units(r));
    auto& tally = tallies[table.find(t.from, t.to)];
    tally.from = t.from;
    tally.to = t.to;
    tally.attempts += 1;
    if (r.feasible) {
      tally.successes += 1;
      apply_values(g, t.new_vars, r.values, x);
    }
    return r;
  };

  auto begin_attempt = [&] {
    std::fill(x.begin(), x.end(), 0.0);
    step_units.clear();
    sequence.assign(1, 0);
  };

  auto finish_sample = [&] {
    SampleRecord rec;
    rec.values = x;
    rec.sequence = sequence;
    FeasReport rep = evaluate_feasibility(g, x, full);
    rec.max_eq = rep.max_eq;
    rec.max_ineq = rep.max_ineq;
    rec.step_durations = step_units;
    rec.completed_at = clock.now_units();
    rec.seed = seed;
    report.samples.push_back(std::move(rec));
  };

  // Walks a full attempt where `next_state` picks the successor; used by the
  // random and expert strategies and by tree calibration.
  auto scripted_attempt = [&](auto&& next_state) {
    begin_attempt();
    StateMask s = 0;
    double total_cost = 0;
    int steps = 0;
    while (s != full && steps++ < step_cap) {
      StateMask to = next_state(s);
      if (to == 0) return std::pair{false, total_cost};
      const Transition& t = table.at(table.find(s, to));
      SampleAttemptResult r = run_op(t, rng);
      total_cost += base_reward.cost_units(r.elapsed_seconds, r.cost_proxy);
      if (!r.feasible) return std::pair{false, total_cost};
      s = to;
      sequence.push_back(s);
    }
    if (s == full) {
      finish_sample();
      return std::pair{true, total_cost};
    }
    return std::pair{false, total_cost};
  };

  auto random_next = [&](StateMask s) -> StateMask {
    const auto& acts = table.surviving_from(s);
    if (acts.empty()) return 0;
    return table.at(acts[rng.uniform_int(static_cast<int>(acts.size()))]).to;
  };

  const bool is_tree = strategy.tag == StrategyTag::Tree || strategy.tag == StrategyTag::TreeWarm;
  double lambda = base_reward.lambda;

  auto under_budget = [&] {
    return !clock.expired() &&
           (cfg.max_attempts == 0 || report.attempts < cfg.max_attempts);
  };

  if (is_tree) {
    if (cfg.auto_lambda_enabled && cfg.calibration_attempts > 0) {
      std::vector<double> costs;
      while (under_budget() && static_cast<int>(costs.size()) < cfg.calibration_attempts) {
        auto [ok, cost] = scripted_attempt(random_next);
        report.attempts += 1;
        costs.push_back(cost);
      }
      lambda = auto_lambda(costs);
    }
    RewardConfig reward = base_reward;
    reward.lambda = lambda;

    const WarmstartStore* priors =
        strategy.tag == StrategyTag::TreeWarm ? cfg.warmstart : nullptr;
    WarmstartStore priors_with_n;
    if (priors) {
      priors_with_n = *priors;
      priors_with_n.n_equiv = cfg.n_equiv;
      priors = &priors_with_n;
    }
    SearchTree tree(g, table, cfg.exploration_c, priors);

    while (under_budget()) {
      begin_attempt();
      OpFn op = [&](const Transition& t, Rng& stream) {
        SampleAttemptResult r = run_op(t, stream);
        OpOutcome out;
        out.feasible = r.feasible;
        out.cost = reward.cost_units(r.elapsed_seconds, r.cost_proxy);
        return out;
      };
      RolloutResult roll = tree.rollout(op, reward, rng);
      report.attempts += 1;
      if (roll.reached_goal) {
        sequence = roll.sequence;
        finish_sample();
      }
    }
    if (harvest) harvest->absorb(tree.root());
  } else {
    auto expert_next = [&](StateMask s) -> StateMask {
      for (std::size_t i = 0; i < strategy.expert_sequence.size(); ++i) {
        StateMask prev = i == 0 ? 0 : strategy.expert_sequence[i - 1];
        if (prev == s) return strategy.expert_sequence[i];
      }
      return 0;
    };
    while (under_budget()) {
      if (strategy.tag == StrategyTag::Random)
        scripted_attempt(random_next);
      else
        scripted_attempt(expert_next);
      report.attempts += 1;
    }
  }

  report.lambda_used = lambda;
  report.wall_time = clock.now_units();
  report.samples_per_second =
      report.wall_time > 0 ? static_cast<double>(report.samples.size()) / report.wall_time : 0.0;
  for (auto& [idx, tally] : tallies) report.tallies.push_back(tally);
  return report;
}

std::string serialize_samples(const ConstraintGraph& g, std::span<const SampleRecord> samples) {
  std::string out;
  for (const auto& rec : samples) {
    out += "sample seq=";
    for (std::size_t i = 0; i < rec.sequence.size(); ++i) {
      if (i) out += '>';
      out += state_to_string(g, rec.sequence[i]);
    }
    out += " eq=" + fmt_g17(rec.max_eq) + " ineq=" + fmt_g17(rec.max_ineq);
    out += " at=" + fmt_g17(rec.completed_at);
    out += " steps=";
    for (std::size_t i = 0; i < rec.step_durations.size(); ++i) {
      if (i) out += ':';
      out += fmt_g17(rec.step_durations[i]);
    }
    out += " seed=" + std::to_string(rec.seed);
    for (int v = 0; v < g.var_count(); ++v) {
      out += " " + g.variable(v).id + "=";
      auto s = rec.slice(g, v);
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (k) out += ':';
        out += fmt_g17(s[k]);
      }
    }
    out += "\n";
  }
  return out;
}

std::vector<SampleRecord> parse_samples(const ConstraintGraph& g, std::string_view text) {
  std::vector<SampleRecord> records;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok[0] == '#') continue;
    if (tok != "sample") throw ParseError(lineno, "expected 'sample' records");
    SampleRecord rec;
    rec.values.assign(g.ambient_dim(), 0.0);
    while (ls >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) throw ParseError(lineno, "expected key=value in sample record");
      std::string key = tok.substr(0, eq);
      std::string val = tok.substr(eq + 1);
      auto nums = [&](char sep) {
        std::vector<double> vs;
        std::istringstream vss(val);
        std::string part;
        while (std::getline(vss, part, sep)) vs.push_back(std::strtod(part.c_str(), nullptr));
        return vs;
      };
      if (key == "seq") {
        std::istringstream vss(val);
        std::string part;
        while (std::getline(vss, part, '>')) rec.sequence.push_back(state_from_string(g, part));
      } else if (key == "eq") {
        rec.max_eq = std::strtod(val.c_str(), nullptr);
      } else if (key == "ineq") {
        rec.max_ineq = std::strtod(val.c_str(), nullptr);
      } else if (key == "at") {
        rec.completed_at = std::strtod(val.c_str(), nullptr);
      } else if (key == "steps") {
        rec.step_durations = nums(':');
      } else if (key == "seed") {
        rec.seed = std::strtoull(val.c_str(), nullptr, 10);
      } else {
        int v = g.variable_index(key);
        if (v < 0) throw ParseError(lineno, "unknown variable in sample record: " + key);
        auto vs = nums(':');
        if (vs.size() != static_cast<std::size_t>(g.variable(v).dim))
          throw ParseError(lineno, "wrong value count for variable " + key);
        std::copy(vs.begin(), vs.end(), rec.values.begin() + g.var_offset(v));
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void save_samples_file(const ConstraintGraph& g, std::span<const SampleRecord> samples,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write samples file: " + path);
  out << serialize_samples(g, samples);
}

std::vector<SampleRecord> load_samples_file(const ConstraintGraph& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open samples file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_samples(g, buf.str());
}

std::string report_csv_header() {
  return "graph,strategy,seed,attempts,samples,wall_time,samples_per_second,lambda\n";
}

std::string report_csv_row(const RunReport& r) {
  return r.graph_name + "," + r.strategy_name + "," + std::to_string(r.seed) + "," +
         std::to_string(r.attempts) + "," + std::to_string(r.samples.size()) + "," +
         fmt_g17(r.wall_time) + "," + fmt_g17(r.samples_per_second) + "," +
         fmt_g17(r.lambda_used) + "\n";
}

std::string tallies_csv(const ConstraintGraph& g, const RunReport& r) {
  std::string out = "graph,strategy,seed,from,to,attempts,successes\n";
  for (const auto& t : r.tallies) {
    out += r.graph_name + "," + r.strategy_name + "," + std::to_string(r.seed) + ",\"" +
           state_to_string(g, t.from) + "\",\"" + state_to_string(g, t.to) + "\"," +
           std::to_string(t.attempts) + "," + std::to_string(t.successes) + "\n";
  }
  return out;
}

}  // namespace cgs
