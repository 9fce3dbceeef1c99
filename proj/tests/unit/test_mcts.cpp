#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "cgs/mcts.hpp"
#include "cgs/states.hpp"
#include "doctest.h"

using namespace cgs;

namespace {

SearchNode* add_child(SearchNode& parent, StateMask to, double q, int visits) {
  auto node = std::make_unique<SearchNode>();
  node->state = to;
  node->q_value = q;
  node->visits = visits;
  SearchNode* raw = node.get();
  parent.children.emplace_back(to, std::move(node));
  return raw;
}

// Two equally priced actions with different success odds, driving the real
// tree through a synthetic operator. a -> full succeeds with p_hi, c -> full
// with p_lo.
ConstraintGraph bandit_graph() {
  GraphBuilder b("bandit");
  b.variable("a", 1, 0.0, 1.0);
  b.variable("c", 1, 0.0, 1.0);
  CustomAffine couple;
  couple.rows = 1;
  couple.a = {1, -1};
  couple.b = {0};
  b.constraint("tie", ConstraintKind::Eq, {"a", "c"}, couple);
  return std::move(b).build();
}

}  // namespace

TEST_CASE("uct selection balances value and visit counts") {
  SearchNode node;
  node.visits = 10;
  add_child(node, 1u, 0.5, 2);
  add_child(node, 2u, 0.3, 8);
  std::vector<StateMask> actions{1u, 2u};

  // c = 1: 0.5 + sqrt(ln 10 / 2) = 1.5730 beats 0.3 + sqrt(ln 10 / 8) = 0.8365.
  CHECK(select_child_index(node, actions, 1.0) == 0);
  CHECK(select_child(node, actions, 1.0) == 1u);

  // c = 0 is pure exploitation; flipping the values flips the pick.
  CHECK(select_child_index(node, actions, 0.0) == 0);
  node.child(1u)->q_value = 0.1;
  CHECK(select_child_index(node, actions, 0.0) == 1);

  // A large c favors the rarely visited child regardless of value.
  node.child(1u)->q_value = 0.0;
  node.child(2u)->q_value = 5.0;
  CHECK(select_child_index(node, actions, 100.0) == 0);
}

TEST_CASE("unvisited actions are tried first in declaration order") {
  SearchNode node;
  node.visits = 4;
  add_child(node, 1u, 0.9, 4);
  std::vector<StateMask> actions{1u, 2u, 4u};
  CHECK(select_child_index(node, actions, 1.0) == 1);  // 2u has no node yet
  add_child(node, 2u, 0.0, 0);
  CHECK(select_child_index(node, actions, 1.0) == 1);  // node exists, zero visits
  add_child(node, 4u, 0.0, 1);
  node.child(2u)->visits = 1;
  CHECK(select_child_index(node, actions, 0.0) == 0);  // all visited, argmax q
}

TEST_CASE("uct argmax is invariant to shifting all values") {
  SearchNode node;
  node.visits = 30;
  add_child(node, 1u, 0.2, 10);
  add_child(node, 2u, 0.35, 12);
  add_child(node, 4u, 0.1, 8);
  std::vector<StateMask> actions{1u, 2u, 4u};
  int base = select_child_index(node, actions, 0.7);
  for (auto& [s, child] : node.children) child->q_value += 123.5;
  CHECK(select_child_index(node, actions, 0.7) == base);
}

TEST_CASE("backpropagation keeps incremental means") {
  SearchNode a, b;
  std::vector<SearchNode*> path{&a, &b};
  backpropagate(path, 1.0);
  backpropagate(path, 0.0);
  backpropagate(path, 0.5);
  CHECK(a.visits == 3);
  CHECK(b.visits == 3);
  CHECK(a.q_value == doctest::Approx(0.5));
  CHECK(b.q_value == doctest::Approx(0.5));

  backpropagate(std::vector<SearchNode*>{&a}, -0.5);
  CHECK(a.visits == 4);
  CHECK(a.q_value == doctest::Approx(0.25));
}

TEST_CASE("lambda calibration follows mean rollout cost") {
  CHECK(auto_lambda(std::vector<double>{1.0}) == doctest::Approx(0.5));
  CHECK(auto_lambda(std::vector<double>{3.0, 5.0}) == doctest::Approx(0.2));
  CHECK(auto_lambda(std::vector<double>{0.0, 0.0}) == doctest::Approx(1.0 - 1e-6));
  // No cost observations: the zero mean pushes lambda to the upper clamp.
  CHECK(auto_lambda(std::vector<double>{}) == doctest::Approx(1.0 - 1e-6));
  // Enormous costs clamp instead of reaching zero.
  CHECK(auto_lambda(std::vector<double>{1e12}) >= 1e-6);
}

TEST_CASE("reward config converts both cost sources") {
  RewardConfig r;
  r.time_unit = 1e-3;
  r.proxy_unit = 1000.0;
  r.cost_source = RewardConfig::CostSource::WallClock;
  CHECK(r.cost_units(0.002, 99999) == doctest::Approx(2.0));
  r.cost_source = RewardConfig::CostSource::CostProxy;
  CHECK(r.cost_units(123.0, 1500) == doctest::Approx(1.5));
}

TEST_CASE("warmstart store merges means and round trips") {
  SearchNode root1;
  root1.signature = "{}";
  root1.visits = 5;
  auto* c1 = add_child(root1, 1u, 0.6, 3);
  c1->signature = "{}>{a}";

  SearchNode root2;
  root2.signature = "{}";
  root2.visits = 4;
  auto* c2 = add_child(root2, 1u, 1.0, 2);
  c2->signature = "{}>{a}";
  auto* d2 = add_child(root2, 3u, -0.25, 1);
  d2->signature = "{}>{a,c}";

  WarmstartStore store;
  store.absorb(root1);
  store.absorb(root2);
  REQUIRE(store.entries.count("{}>{a}") == 1);
  CHECK(store.entries["{}>{a}"].mean_q == doctest::Approx(0.8));
  CHECK(store.entries["{}>{a}"].instance_count == 2);
  CHECK(store.entries["{}>{a,c}"].instance_count == 1);
  // The root itself carries no action information.
  CHECK(store.entries.count("{}") == 0);

  WarmstartStore back = WarmstartStore::parse(store.serialize());
  CHECK(back.entries.size() == store.entries.size());
  CHECK(back.entries["{}>{a}"].mean_q == doctest::Approx(0.8));
  CHECK(back.serialize() == store.serialize());

  std::string path = "warmstart_tmp.txt";
  store.save_file(path);
  WarmstartStore loaded = WarmstartStore::load_file(path);
  CHECK(loaded.serialize() == store.serialize());
  std::remove(path.c_str());

  CHECK_THROWS_AS(WarmstartStore::parse("{}>{a} not_a_number 1\n"), GraphError);
}

TEST_CASE("warmstarted children start with prior value and virtual visits") {
  ConstraintGraph g = bandit_graph();
  TransitionTable t = TransitionTable::build_pruned(g);

  WarmstartStore store;
  store.n_equiv = 7;
  store.entries["{}>{a}"] = {0.42, 3};

  SearchTree tree(g, t, 1.0, &store);
  Rng rng(1);
  RewardConfig reward;  // lambda 0.5, r_g 1
  // Feasible everywhere at zero cost, so a goal rollout is worth exactly 0.5.
  OpFn op = [](const Transition&, Rng&) { return OpOutcome{true, 0.0}; };
  RolloutResult roll = tree.rollout(op, reward, rng);
  REQUIRE(roll.reached_goal);
  CHECK(roll.reward == doctest::Approx(0.5));

  // The first unvisited root action is {a}; its node starts from the prior
  // (0.42 mean, 7 virtual visits) and absorbs the single real reward.
  const SearchNode* a = tree.root().child(1u);
  REQUIRE(a != nullptr);
  CHECK(a->visits == 8);
  CHECK(a->q_value == doctest::Approx(0.42 + (0.5 - 0.42) / 8.0));
}

TEST_CASE("rollout reward combines goal and cost terms") {
  ConstraintGraph g = bandit_graph();
  TransitionTable t = TransitionTable::build_pruned(g);
  SearchTree tree(g, t);
  Rng rng(5);
  RewardConfig reward;
  reward.lambda = 0.4;
  reward.r_g = 1.0;

  OpFn ok = [](const Transition&, Rng&) { return OpOutcome{true, 0.25}; };
  RolloutResult r = tree.rollout(ok, reward, rng);
  REQUIRE(r.reached_goal);
  // One transition on the {} -> {a,c} path or two on {} -> {a} -> {a,c}.
  const double cost = 0.25 * static_cast<double>(r.sequence.size() - 1);
  CHECK(r.total_cost == doctest::Approx(cost));
  CHECK(r.reward == doctest::Approx(0.6 - 0.4 * cost));
  CHECK(r.sequence.front() == 0u);
  CHECK(r.sequence.back() == t.full_mask());

  OpFn fail = [](const Transition&, Rng&) { return OpOutcome{false, 0.5}; };
  RolloutResult f = tree.rollout(fail, reward, rng);
  CHECK_FALSE(f.reached_goal);
  CHECK(f.total_cost == doctest::Approx(0.5));  // absorbing failure after one op
  CHECK(f.reward == doctest::Approx(-0.4 * 0.5));
}

TEST_CASE("tree visits concentrate on the higher-yield action") {
  ConstraintGraph g = bandit_graph();
  TransitionTable t = TransitionTable::build_pruned(g);
  // The tie couples a and c, so the direct jump {} -> {a,c} survives next to
  // the staged routes. Give the jump high odds and everything else low odds.
  int pass_seeds = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SearchTree tree(g, t, 0.5);
    Rng rng(seed);
    RewardConfig reward;
    reward.lambda = 0.5;
    OpFn op = [](const Transition& tr, Rng& rr) {
      const bool full_jump = tr.from == 0u && tr.to == 3u;
      const double p = full_jump ? 0.8 : 0.15;
      return OpOutcome{rr.uniform01() < p, 0.1};
    };
    for (int k = 0; k < 400; ++k) tree.rollout(op, reward, rng);
    const SearchNode* hi = tree.root().child(3u);
    REQUIRE(hi != nullptr);
    std::int64_t others = 0;
    for (const auto& [s, child] : tree.root().children)
      if (s != 3u) others += child->visits;
    if (hi->visits > 2 * others) ++pass_seeds;
  }
  CHECK(pass_seeds >= 8);
}
