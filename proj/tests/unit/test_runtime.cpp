#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "cgs/runtime.hpp"
#include "cgs/scenarios.hpp"
#include "doctest.h"

using namespace cgs;

namespace {

GenerateConfig proxy_config(double budget) {
  GenerateConfig cfg;
  cfg.budget_mode = BudgetMode::CostProxy;
  cfg.budget = budget;
  return cfg;
}

}  // namespace

TEST_CASE("expert strategies are validated against the pruned table") {
  ConstraintGraph g = build_scenario(Family::PickPlace, 0);
  TransitionTable t = TransitionTable::build_pruned(g);

  Strategy ok = expert_strategy(g, t, "staged", {{"t"}, {"q1"}, {"q2"}});
  CHECK(ok.tag == StrategyTag::Expert);
  REQUIRE(ok.expert_sequence.size() == 3);
  CHECK(ok.expert_sequence.back() == t.full_mask());

  // {q1} alone is not a surviving first step.
  CHECK_THROWS_AS(expert_strategy(g, t, "bad", {{"q1"}, {"t"}, {"q2"}}), GraphError);
  // Steps must add new variables.
  CHECK_THROWS_AS(expert_strategy(g, t, "dup", {{"t"}, {"t"}, {"q1", "q2"}}), GraphError);
  // Unknown variable id.
  CHECK_THROWS_AS(expert_strategy(g, t, "typo", {{"tt"}}), GraphError);
  // Must end at the full state.
  CHECK_THROWS_AS(expert_strategy(g, t, "short", {{"t"}, {"q1"}}), GraphError);
}

TEST_CASE("expert runs follow the scripted sequence exactly") {
  ConstraintGraph g = build_scenario(Family::PickPlace, 0);
  TransitionTable t = TransitionTable::build_pruned(g);
  Strategy expert = expert_strategy(g, t, "staged", {{"t"}, {"q1"}, {"q2"}});

  RunReport rep = generate(g, t, expert, proxy_config(2e5), 21);
  REQUIRE(!rep.samples.empty());
  std::vector<StateMask> want{0};
  for (StateMask s : expert.expert_sequence) want.push_back(s);
  for (const auto& rec : rep.samples) CHECK(rec.sequence == want);

  // Tallies stay on the scripted edges.
  std::set<std::pair<StateMask, StateMask>> edges;
  StateMask prev = 0;
  for (StateMask s : expert.expert_sequence) {
    edges.insert({prev, s});
    prev = s;
  }
  for (const auto& tally : rep.tallies) {
    CHECK(edges.count({tally.from, tally.to}) == 1);
    CHECK(tally.attempts >= tally.successes);
  }
  CHECK(rep.strategy_name == "staged");
  CHECK(rep.graph_name == "pick_place_0");
}

TEST_CASE("proxy budget and attempt caps are honored") {
  ConstraintGraph g = build_scenario(Family::PickPlace, 0);
  TransitionTable t = TransitionTable::build_pruned(g);

  RunReport rep = generate(g, t, random_strategy(), proxy_config(5e4), 3);
  CHECK(rep.attempts > 0);
  CHECK(rep.wall_time >= 5e4);  // ran until the proxy clock expired

  GenerateConfig capped = proxy_config(1e9);
  capped.max_attempts = 17;
  RunReport few = generate(g, t, random_strategy(), capped, 3);
  CHECK(few.attempts == 17);
}

TEST_CASE("proxy mode runs are bitwise reproducible") {
  ConstraintGraph g = build_scenario(Family::Handover, 2);
  TransitionTable t = TransitionTable::build_pruned(g);

  for (const Strategy& s : {tree_strategy(), random_strategy()}) {
    RunReport a = generate(g, t, s, proxy_config(3e5), 42);
    RunReport b = generate(g, t, s, proxy_config(3e5), 42);
    CHECK(a.attempts == b.attempts);
    CHECK(a.wall_time == b.wall_time);
    CHECK(a.lambda_used == b.lambda_used);
    CHECK(report_csv_row(a) == report_csv_row(b));
    CHECK(serialize_samples(g, a.samples) == serialize_samples(g, b.samples));
  }
}

TEST_CASE("distinct seeds explore distinct sample streams") {
  ConstraintGraph g = build_scenario(Family::PickPlace, 0);
  TransitionTable t = TransitionTable::build_pruned(g);
  RunReport a = generate(g, t, random_strategy(), proxy_config(2e5), 1);
  RunReport b = generate(g, t, random_strategy(), proxy_config(2e5), 2);
  REQUIRE(!a.samples.empty());
  REQUIRE(!b.samples.empty());
  CHECK(serialize_samples(g, a.samples) != serialize_samples(g, b.samples));
}

TEST_CASE("every reported sample passes a fresh feasibility check") {
  ConstraintGraph g = build_scenario(Family::PickPlace, 0);
  TransitionTable t = TransitionTable::build_pruned(g);
  GenerateConfig cfg = proxy_config(3e5);
  for (const Strategy& s : {tree_strategy(), random_strategy()}) {
    RunReport rep = generate(g, t, s, cfg, 77);
    REQUIRE(!rep.samples.empty());
    for (const auto& rec : rep.samples) {
      FeasReport fr = evaluate_feasibility(g, rec.values, g.full_mask());
      CHECK(fr.feasible(cfg.solver.tol_eq, cfg.solver.tol_ineq));
      CHECK(rec.max_eq <= cfg.solver.tol_eq);
      CHECK(rec.max_ineq <= cfg.solver.tol_ineq);
      CHECK(rec.sequence.front() == 0u);
      CHECK(rec.sequence.back() == t.full_mask());
      CHECK(rec.completed_at <= rep.wall_time);
      CHECK(rec.seed == 77);
    }
  }
}

TEST_CASE("sample serialization round trips through files") {
  ConstraintGraph g = build_scenario(Family::PickPlace, 0);
  TransitionTable t = TransitionTable::build_pruned(g);
  RunReport rep = generate(g, t, random_strategy(), proxy_config(2e5), 5);
  REQUIRE(!rep.samples.empty());

  std::string text = serialize_samples(g, rep.samples);
  std::vector<SampleRecord> back = parse_samples(g, text);
  REQUIRE(back.size() == rep.samples.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].values == rep.samples[i].values);  // bitwise via %.17g
    CHECK(back[i].sequence == rep.samples[i].sequence);
  }
  CHECK(serialize_samples(g, back) == text);

  std::string path = "samples_tmp.txt";
  save_samples_file(g, rep.samples, path);
  std::vector<SampleRecord> loaded = load_samples_file(g, path);
  CHECK(serialize_samples(g, loaded) == text);
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_samples_file(g, "missing_samples.txt"), GraphError);
  CHECK_THROWS_AS(parse_samples(g, "sample seq=oops values=1\n"), GraphError);
}

TEST_CASE("generate refuses graphs without a surviving path") {
  GraphBuilder b("blocked");
  b.variable("a", 1, 0.0, 1.0);
  CustomAffine pin;
  pin.rows = 2;
  pin.a = {1.0, 1.0};
  pin.b = {-0.5, -0.5};
  b.constraint("pin", ConstraintKind::Eq, {"a"}, pin);
  ConstraintGraph g = std::move(b).build();
  TransitionTable t = TransitionTable::build_pruned(g);
  CHECK_THROWS_AS(generate(g, t, tree_strategy(), proxy_config(1e4), 1), NoPathError);
}

TEST_CASE("config validation") {
  ConstraintGraph g = build_scenario(Family::PickPlace, 0);
  TransitionTable t = TransitionTable::build_pruned(g);
  CHECK_THROWS_AS(generate(g, t, tree_strategy(), proxy_config(0), 1), GraphError);
  Strategy empty_expert;
  empty_expert.tag = StrategyTag::Expert;
  empty_expert.name = "empty";
  CHECK_THROWS_AS(generate(g, t, empty_expert, proxy_config(1e4), 1), GraphError);
}

TEST_CASE("tree harvest feeds warmstarted runs") {
  ConstraintGraph g = build_scenario(Family::PickPlace, 0);
  TransitionTable t = TransitionTable::build_pruned(g);

  WarmstartStore store;
  RunReport cold = generate(g, t, tree_strategy(), proxy_config(3e5), 11, &store);
  REQUIRE(!cold.samples.empty());
  CHECK(!store.entries.empty());
  // Path signatures start at the root.
  for (const auto& [sig, e] : store.entries) {
    CHECK(sig.rfind("{}>", 0) == 0);
    CHECK(e.instance_count == 1);
  }

  GenerateConfig warm_cfg = proxy_config(3e5);
  warm_cfg.warmstart = &store;
  RunReport warm = generate(g, t, tree_warm_strategy(), warm_cfg, 12);
  CHECK(!warm.samples.empty());
  CHECK(warm.strategy_name == "tree_warm");
}

TEST_CASE("proxy reports use proxy clock units") {
  ConstraintGraph g = build_scenario(Family::PickPlace, 0);
  TransitionTable t = TransitionTable::build_pruned(g);
  RunReport rep = generate(g, t, random_strategy(), proxy_config(1e5), 9);
  // samples_per_second is per clock unit, so it is consistent with the totals.
  if (rep.wall_time > 0)
    CHECK(rep.samples_per_second ==
          doctest::Approx(static_cast<double>(rep.samples.size()) / rep.wall_time));
  double step_sum = 0;
  for (const auto& rec : rep.samples)
    for (double d : rec.step_durations) step_sum += d;
  CHECK(step_sum <= rep.wall_time + 1e-9);
}
