#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cgs/runtime.hpp"
#include "cgs/scenarios.hpp"
#include "cgs/states.hpp"
#include "doctest.h"

using namespace cgs;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string adjacency(const ConstraintGraph& g, const TransitionTable& t) {
  std::string out;
  for (const auto& tr : t.all())
    if (tr.surviving()) out += state_to_string(g, tr.from) + " -> " + state_to_string(g, tr.to) + "\n";
  return out;
}

const Family kFamilies[] = {Family::PickPlace, Family::Handover, Family::Banana};

}  // namespace

TEST_CASE("family names round trip") {
  for (Family f : kFamilies) CHECK(family_from_string(std::string(family_name(f))) == f);
  CHECK_THROWS_AS(family_from_string("unknown"), GraphError);
}

TEST_CASE("instance pruning matches the counting lattice family-wide") {
  for (Family f : kFamilies) {
    TransitionTable counting = TransitionTable::build_pruned(build_counting_graph(f));
    for (int i = 0; i < kInstancesPerFamily; ++i) {
      CAPTURE(family_name(f));
      CAPTURE(i);
      ConstraintGraph g = build_scenario(f, i);
      TransitionTable t = TransitionTable::build_pruned(g);
      CHECK(t.total() == counting.total());
      CHECK(t.surviving_count() == counting.surviving_count());
      for (PruneRule r : {PruneRule::ZeroProbability, PruneRule::CondIndependence,
                          PruneRule::DeadEnd, PruneRule::Unreachable})
        CHECK(t.pruned_count(r) == counting.pruned_count(r));
    }
  }
  CHECK_THROWS_AS(build_scenario(Family::PickPlace, kInstancesPerFamily), GraphError);
  CHECK_THROWS_AS(build_scenario(Family::PickPlace, -1), GraphError);
}

TEST_CASE("every instance ships a feasible witness") {
  for (Family f : kFamilies)
    for (int i = 0; i < kInstancesPerFamily; ++i) {
      CAPTURE(family_name(f));
      CAPTURE(i);
      ConstraintGraph g = build_scenario(f, i);
      REQUIRE(g.has_witness());
      FeasReport rep = evaluate_feasibility(g, g.witness(), g.full_mask());
      CHECK(rep.feasible(1e-6, 1e-8));
    }
  ConstraintGraph ik = build_two_link_ik();
  REQUIRE(ik.has_witness());
  CHECK(evaluate_feasibility(ik, ik.witness(), ik.full_mask()).feasible(1e-6, 1e-8));
}

TEST_CASE("two link ik keeps only the joint transition") {
  ConstraintGraph g = build_two_link_ik();
  TransitionTable t = TransitionTable::build_pruned(g);
  CHECK(t.total() == 5);
  CHECK(t.surviving_count() == 1);
  const Transition& tr = t.at(t.surviving_from(0).front());
  CHECK(tr.from == 0u);
  CHECK(tr.to == t.full_mask());
}

TEST_CASE("builtin experts validate on every instance") {
  for (Family f : kFamilies) {
    auto names = builtin_expert_names(f);
    REQUIRE(names.size() == 3);
    for (int i = 0; i < kInstancesPerFamily; ++i) {
      ConstraintGraph g = build_scenario(f, i);
      TransitionTable t = TransitionTable::build_pruned(g);
      for (std::size_t e = 0; e < names.size(); ++e) {
        CAPTURE(family_name(f));
        CAPTURE(i);
        CAPTURE(names[e]);
        Strategy s = expert_strategy(g, t, names[e], builtin_expert_steps(f, static_cast<int>(e)));
        CHECK(s.expert_sequence.back() == t.full_mask());
      }
    }
  }
}

TEST_CASE("committed fixtures match the builders exactly") {
  const std::string dir = CGS_FIXTURE_DIR;
  for (Family f : kFamilies)
    for (int i = 0; i < kInstancesPerFamily; ++i) {
      ConstraintGraph g = build_scenario(f, i);
      CAPTURE(g.name());
      CHECK(serialize_graph(g) == slurp(dir + "/" + g.name() + ".graph"));
    }
  CHECK(serialize_graph(build_two_link_ik()) == slurp(dir + "/two_link_ik.graph"));
}

TEST_CASE("surviving adjacency matches the golden lists") {
  const std::string dir = CGS_GOLDEN_DIR;
  for (Family f : kFamilies) {
    ConstraintGraph g = build_scenario(f, 0);
    TransitionTable t = TransitionTable::build_pruned(g);
    CHECK(adjacency(g, t) == slurp(dir + "/" + g.name() + ".adjacency.txt"));
  }
  ConstraintGraph ik = build_two_link_ik();
  CHECK(adjacency(ik, TransitionTable::build_pruned(ik)) ==
        slurp(dir + "/two_link_ik.adjacency.txt"));
}

TEST_CASE("counting graph knob widths change the lattice") {
  // Extra rows only grow constraint counts, never the variable set, so the
  // lattice size is stable while pruning shifts.
  ConstraintGraph wide = build_counting_graph(Family::Handover, 2, 3, 3);
  CHECK(TransitionTable::enumerate_transitions(wide).total() == 2059);
  ConstraintGraph base = build_counting_graph(Family::Handover);
  CHECK(TransitionTable::enumerate_transitions(base).total() == 2059);
  CHECK(TransitionTable::build_pruned(base).surviving_count() == 179);
  CHECK(TransitionTable::build_pruned(wide).surviving_count() == 163);
}
