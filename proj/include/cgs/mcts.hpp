#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cgs/graph.hpp"
#include "cgs/rng.hpp"
#include "cgs/states.hpp"

namespace cgs {

struct RewardConfig {
  double lambda = 0.5;  // in (0,1); weight of time costs vs goal reward
  double r_g = 1.0;
  enum class CostSource { WallClock, CostProxy } cost_source = CostSource::WallClock;
  // Unit scales keep typical attempt costs near 1 so reward differences stay
  // comparable to the UCT exploration term. 1000 proxy units execute in about
  // a millisecond on a release build, so the two modes line up.
  double time_unit = 1e-3;     // seconds per reward unit
  double proxy_unit = 1000.0;  // proxy units per reward unit

  double cost_units(double elapsed_seconds, std::int64_t cost_proxy) const {
    return cost_source == CostSource::WallClock
               ? elapsed_seconds / time_unit
               : static_cast<double>(cost_proxy) / proxy_unit;
  }
};

// λ = 1/(ĉ+1) for ĉ = mean rollout cost in reward units, clamped into (0,1).
double auto_lambda(std::span<const double> rollout_costs);

struct SearchNode {
  StateMask state = 0;
  std::string signature;  // "{}>{t}>{t,q1}" style path key
  double q_value = 0;
  int visits = 0;
  std::vector<std::pair<StateMask, std::unique_ptr<SearchNode>>> children;

  SearchNode* child(StateMask to) const {
    for (const auto& [s, node] : children)
      if (s == to) return node.get();
    return nullptr;
  }
};

// Index into `actions` of the UCT argmax Q + c*sqrt(ln N / n); unvisited
// actions win first, earlier declaration order breaking ties.
int select_child_index(const SearchNode& node, std::span<const StateMask> actions, double c);
StateMask select_child(const SearchNode& node, std::span<const StateMask> actions, double c);

void backpropagate(std::span<SearchNode* const> path, double reward);

struct WarmstartStore {
  struct Entry {
    double mean_q = 0;
    int instance_count = 0;
  };
  std::unordered_map<std::string, Entry> entries;
  int n_equiv = 10;

  // Folds one finished tree's Q values into the running per-signature means.
  void absorb(const SearchNode& root);

  static WarmstartStore load_file(const std::string& path);
  void save_file(const std::string& path) const;
  static WarmstartStore parse(std::string_view text);
  std::string serialize() const;
};

struct OpOutcome {
  bool feasible = false;
  double cost = 0;  // reward units
};
using OpFn = std::function<OpOutcome(const Transition&, Rng&)>;

struct RolloutResult {
  std::vector<StateMask> sequence;  // visited states, ∅ first
  bool reached_goal = false;
  double reward = 0;
  double total_cost = 0;  // reward units
};

class SearchTree {
 public:
  SearchTree(const ConstraintGraph& g, const TransitionTable& table, double exploration_c = 1.0,
             const WarmstartStore* priors = nullptr);

  // One UCT episode: select through the stored tree, expand at most one new
  // node, continue with uniformly random actions, execute `op` per transition,
  // stop on infeasible (absorbing failure), back up the final reward.
  RolloutResult rollout(const OpFn& op, const RewardConfig& reward, Rng& rng);

  SearchNode& root() { return root_; }
  const SearchNode& root() const { return root_; }
  int node_count() const { return node_count_; }
  const ConstraintGraph& graph() const { return *g_; }
  const TransitionTable& table() const { return *table_; }

  // Re-applies store priors to already materialized nodes.
  void apply_warmstart(const WarmstartStore& store);

 private:
  SearchNode* ensure_child(SearchNode& parent, StateMask to);
  const ConstraintGraph* g_;
  const TransitionTable* table_;
  double c_;
  const WarmstartStore* priors_;
  SearchNode root_;
  int node_count_ = 1;
};

}  // namespace cgs
