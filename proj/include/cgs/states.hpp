#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cgs/graph.hpp"

namespace cgs {

// Set of assigned variable indices, bit v for variable v.
using StateMask = std::uint32_t;

std::string state_to_string(const ConstraintGraph& g, StateMask s);
// Inverse of state_to_string; throws GraphError on unknown ids or bad syntax.
StateMask state_from_string(const ConstraintGraph& g, std::string_view text);

enum class PruneRule : std::uint8_t {
  None = 0,
  ZeroProbability,
  CondIndependence,
  DeadEnd,
  Unreachable,
};
std::string_view prune_rule_name(PruneRule r);

struct Transition {
  StateMask from = 0, to = 0, new_vars = 0;
  int new_dof = 0;
  int new_eq_rows = 0;
  PruneRule pruned_by = PruneRule::None;
  bool surviving() const { return pruned_by == PruneRule::None; }
};

bool prune_zero_probability(const Transition& t, const ConstraintGraph& g);
bool prune_cond_independence(const Transition& t, const ConstraintGraph& g);

class TransitionTable {
 public:
  // All pairs from ⊂ to, sorted by (from, to); 3^n - 2^n entries. Guarded to
  // n <= 20 (the lattice is materialized eagerly).
  static TransitionTable enumerate_transitions(const ConstraintGraph& g);

  // Tags zero_probability then cond_independence on untagged transitions.
  void apply_rule_pruning(const ConstraintGraph& g);

  // Repeats until fixpoint: tag transitions into states that cannot reach the
  // full state over surviving transitions (dead_end), then transitions out of
  // states unreachable from the empty state (unreachable).
  void apply_closure();

  static TransitionTable build_pruned(const ConstraintGraph& g);

  std::int64_t total() const { return static_cast<std::int64_t>(transitions_.size()); }
  std::int64_t pruned_count(PruneRule r) const;
  std::int64_t surviving_count() const;
  double pruning_ratio() const;  // pruned / total

  std::span<const Transition> all() const { return transitions_; }
  const Transition& at(int i) const { return transitions_[i]; }
  int find(StateMask from, StateMask to) const;  // index, or -1

  // Indices of surviving transitions out of s, ascending by target state.
  const std::vector<int>& surviving_from(StateMask s) const;

  StateMask full_mask() const { return full_; }
  int var_count() const { return n_; }

  // After closure, every surviving transition lies on a full path, so the goal
  // is reachable iff anything survived.
  bool goal_reachable() const { return surviving_count() > 0; }

  std::string to_dot(const ConstraintGraph& g) const;

 private:
  void rebuild_index();
  std::vector<Transition> transitions_;
  std::unordered_map<StateMask, std::vector<int>> surviving_from_;
  StateMask full_ = 0;
  int n_ = 0;
};

}  // namespace cgs
