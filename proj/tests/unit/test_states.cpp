#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cgs/scenarios.hpp"
#include "cgs/states.hpp"
#include "doctest.h"

using namespace cgs;

namespace {

ConstraintGraph free_vars(int n) {
  GraphBuilder b("free" + std::to_string(n));
  for (int i = 0; i < n; ++i) b.variable("v" + std::to_string(i), 1, 0.0, 1.0);
  return std::move(b).build();
}

std::int64_t pow_i(std::int64_t base, int exp) {
  std::int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// Structure used by the closure tests: pinning `a` alone is overconstrained
// (2 equality rows onto 1 dof) but adding both variables at once is fine.
ConstraintGraph closure_graph() {
  GraphBuilder b("closure");
  b.variable("a", 1, 0.0, 1.0);
  b.variable("c", 1, 0.0, 1.0);
  CustomAffine pin_a;  // a = 0.5 twice over, still 2 rows structurally
  pin_a.rows = 2;
  pin_a.a = {1.0, 1.0};
  pin_a.b = {-0.5, -0.5};
  b.constraint("pin_a", ConstraintKind::Eq, {"a"}, pin_a);
  BoxMembership couple;
  couple.lo = {0.0, 0.0};
  couple.hi = {1.0, 1.0};
  b.constraint("couple", ConstraintKind::Ineq, {"a", "c"}, couple);
  return std::move(b).build();
}

std::set<std::pair<std::string, std::string>> surviving_pairs(const ConstraintGraph& g,
                                                              const TransitionTable& t) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& tr : t.all())
    if (tr.surviving()) out.insert({state_to_string(g, tr.from), state_to_string(g, tr.to)});
  return out;
}

// Every surviving transition must sit on a path from {} to the full state
// that uses surviving transitions only. Checked with plain BFS here,
// independent of the closure implementation.
void check_on_path(const TransitionTable& t) {
  const StateMask full = t.full_mask();
  std::set<StateMask> fwd{0}, bwd{full};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& tr : t.all()) {
      if (!tr.surviving()) continue;
      if (fwd.count(tr.from) && !fwd.count(tr.to)) fwd.insert(tr.to), grew = true;
      if (bwd.count(tr.to) && !bwd.count(tr.from)) bwd.insert(tr.from), grew = true;
    }
  }
  for (const auto& tr : t.all()) {
    if (!tr.surviving()) continue;
    CHECK(fwd.count(tr.from) == 1);
    CHECK(bwd.count(tr.to) == 1);
  }
}

}  // namespace

TEST_CASE("transition totals follow the closed form") {
  for (int n = 1; n <= 10; ++n) {
    ConstraintGraph g = free_vars(n);
    TransitionTable t = TransitionTable::enumerate_transitions(g);
    CHECK(t.total() == pow_i(3, n) - pow_i(2, n));
  }
}

TEST_CASE("enumeration matches brute force over subset pairs") {
  for (int n = 1; n <= 6; ++n) {
    ConstraintGraph g = free_vars(n);
    TransitionTable t = TransitionTable::enumerate_transitions(g);
    std::set<std::pair<StateMask, StateMask>> brute;
    const StateMask full = (1u << n) - 1u;
    for (StateMask to = 0; to <= full; ++to)
      for (StateMask from = 0; from <= full; ++from)
        if (from != to && (from & ~to) == 0) brute.insert({from, to});
    CHECK(t.total() == static_cast<std::int64_t>(brute.size()));
    std::set<std::pair<StateMask, StateMask>> got;
    StateMask prev_from = 0;
    for (const auto& tr : t.all()) {
      got.insert({tr.from, tr.to});
      CHECK(tr.from <= tr.to);   // proper subset ordering
      CHECK(prev_from <= tr.from);  // sorted by (from, to)
      prev_from = tr.from;
      CHECK((tr.from & ~tr.to) == 0);
      CHECK(tr.new_vars == (tr.to & ~tr.from));
    }
    CHECK(got == brute);
  }
}

TEST_CASE("counting graph lattice sizes") {
  CHECK(TransitionTable::enumerate_transitions(build_counting_graph(Family::PickPlace)).total() ==
        19);
  CHECK(TransitionTable::enumerate_transitions(build_counting_graph(Family::Handover)).total() ==
        2059);
  CHECK(TransitionTable::enumerate_transitions(build_counting_graph(Family::Banana)).total() ==
        19171);
}

TEST_CASE("pick and place pruning up to the exact survivor set") {
  ConstraintGraph g = build_scenario(Family::PickPlace, 0);
  TransitionTable t = TransitionTable::build_pruned(g);

  CHECK(t.total() == 19);
  CHECK(t.pruned_count(PruneRule::ZeroProbability) == 5);
  CHECK(t.pruned_count(PruneRule::CondIndependence) == 2);
  CHECK(t.pruned_count(PruneRule::DeadEnd) == 4);
  CHECK(t.pruned_count(PruneRule::Unreachable) == 0);
  CHECK(t.surviving_count() == 8);
  CHECK(t.pruning_ratio() == doctest::Approx(11.0 / 19.0));

  std::set<std::pair<std::string, std::string>> expect{
      {"{}", "{t}"},
      {"{}", "{t,q1}"},
      {"{}", "{t,q2}"},
      {"{}", "{t,q1,q2}"},
      {"{t}", "{t,q1}"},
      {"{t}", "{t,q2}"},
      {"{t,q1}", "{t,q1,q2}"},
      {"{t,q2}", "{t,q1,q2}"},
  };
  CHECK(surviving_pairs(g, t) == expect);
  check_on_path(t);
}

TEST_CASE("handover pruning counts") {
  ConstraintGraph g = build_scenario(Family::Handover, 0);
  TransitionTable t = TransitionTable::build_pruned(g);
  CHECK(t.total() == 2059);
  CHECK(t.pruned_count(PruneRule::ZeroProbability) == 531);
  CHECK(t.pruned_count(PruneRule::CondIndependence) == 956);
  CHECK(t.pruned_count(PruneRule::DeadEnd) == 393);
  CHECK(t.pruned_count(PruneRule::Unreachable) == 0);
  CHECK(t.surviving_count() == 179);
  check_on_path(t);
}

TEST_CASE("banana pruning counts") {
  ConstraintGraph g = build_scenario(Family::Banana, 0);
  TransitionTable t = TransitionTable::build_pruned(g);
  CHECK(t.total() == 19171);
  CHECK(t.pruned_count(PruneRule::ZeroProbability) == 4076);
  CHECK(t.pruned_count(PruneRule::CondIndependence) == 12204);
  CHECK(t.pruned_count(PruneRule::DeadEnd) == 2115);
  CHECK(t.pruned_count(PruneRule::Unreachable) == 0);
  CHECK(t.surviving_count() == 776);
  check_on_path(t);
}

TEST_CASE("zero probability rule fires on overconstrained additions") {
  GraphBuilder b("zp");
  b.variable("a", 1, 0.0, 1.0);
  CustomAffine pin;
  pin.rows = 2;
  pin.a = {1.0, 1.0};
  pin.b = {-0.5, -0.5};
  b.constraint("pin", ConstraintKind::Eq, {"a"}, pin);
  ConstraintGraph g = std::move(b).build();

  TransitionTable t = TransitionTable::enumerate_transitions(g);
  t.apply_rule_pruning(g);
  int i = t.find(0, 1);
  REQUIRE(i >= 0);
  CHECK(t.at(i).new_eq_rows == 2);
  CHECK(t.at(i).new_dof == 1);
  CHECK(t.at(i).pruned_by == PruneRule::ZeroProbability);
}

TEST_CASE("conditional independence rule fires on decoupled additions") {
  GraphBuilder b("ci");
  b.variable("a", 1, 0.0, 1.0);
  b.variable("c", 1, 0.0, 1.0);
  ConstraintGraph g = std::move(b).build();

  TransitionTable t = TransitionTable::enumerate_transitions(g);
  t.apply_rule_pruning(g);
  int i = t.find(0, 3);
  REQUIRE(i >= 0);
  CHECK(t.at(i).pruned_by == PruneRule::CondIndependence);
  // Single-variable additions have one component and survive.
  CHECK(t.at(t.find(0, 1)).surviving());
  CHECK(t.at(t.find(1, 3)).surviving());
}

TEST_CASE("closure tags dead ends and unreachable states") {
  ConstraintGraph g = closure_graph();
  TransitionTable t = TransitionTable::build_pruned(g);

  CHECK(t.total() == 5);
  // {} -> {a} and {c} -> {a,c} add 2 equality rows onto 1 dof.
  CHECK(t.at(t.find(0, 1)).pruned_by == PruneRule::ZeroProbability);
  CHECK(t.at(t.find(2, 3)).pruned_by == PruneRule::ZeroProbability);
  // {c} then has no surviving exit, so entering it is pointless.
  CHECK(t.at(t.find(0, 2)).pruned_by == PruneRule::DeadEnd);
  // {a} keeps a surviving exit but cannot be entered.
  CHECK(t.at(t.find(1, 3)).pruned_by == PruneRule::Unreachable);
  CHECK(t.at(t.find(0, 3)).surviving());
  CHECK(t.surviving_count() == 1);
  CHECK(t.goal_reachable());
  check_on_path(t);
}

TEST_CASE("fully pruned table reports the goal unreachable") {
  GraphBuilder b("blocked");
  b.variable("a", 1, 0.0, 1.0);
  CustomAffine pin;
  pin.rows = 2;
  pin.a = {1.0, 1.0};
  pin.b = {-0.5, -0.5};
  b.constraint("pin", ConstraintKind::Eq, {"a"}, pin);
  ConstraintGraph g = std::move(b).build();
  TransitionTable t = TransitionTable::build_pruned(g);
  CHECK(t.total() == 1);
  CHECK(t.surviving_count() == 0);
  CHECK_FALSE(t.goal_reachable());
}

TEST_CASE("state strings round trip") {
  ConstraintGraph g = build_scenario(Family::PickPlace, 0);
  CHECK(state_to_string(g, 0) == "{}");
  for (StateMask s = 0; s <= g.full_mask(); ++s)
    CHECK(state_from_string(g, state_to_string(g, s)) == s);
  CHECK_THROWS_AS(state_from_string(g, "{nope}"), GraphError);
  CHECK_THROWS_AS(state_from_string(g, "t,q1"), GraphError);
}

TEST_CASE("surviving actions are sorted and indexed consistently") {
  ConstraintGraph g = build_scenario(Family::PickPlace, 0);
  TransitionTable t = TransitionTable::build_pruned(g);
  for (StateMask s = 0; s <= t.full_mask(); ++s) {
    StateMask prev = 0;
    for (int i : t.surviving_from(s)) {
      const Transition& tr = t.at(i);
      CHECK(tr.from == s);
      CHECK(tr.surviving());
      CHECK(tr.to > prev);  // ascending targets
      prev = tr.to;
      CHECK(t.find(tr.from, tr.to) == i);
    }
  }
  CHECK(t.find(1, 1) == -1);
  CHECK(t.find(0, 999) == -1);
}

TEST_CASE("dot export mentions every surviving edge") {
  ConstraintGraph g = build_scenario(Family::PickPlace, 0);
  TransitionTable t = TransitionTable::build_pruned(g);
  std::string dot = t.to_dot(g);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("{t,q1}") != std::string::npos);
}
