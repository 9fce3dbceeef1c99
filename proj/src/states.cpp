#include "cgs/states.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace cgs {

std::string state_to_string(const ConstraintGraph& g, StateMask s) {
  std::string out = "{";
  bool first = true;
  for (int v = 0; v < g.var_count(); ++v) {
    if (!(s & (1u << v))) continue;
    if (!first) out += ',';
    out += g.variable(v).id;
    first = false;
  }
  return out + "}";
}

StateMask state_from_string(const ConstraintGraph& g, std::string_view text) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw GraphError("state must look like {a,b}: " + std::string(text));
  StateMask s = 0;
  std::string_view body = text.substr(1, text.size() - 2);
  while (!body.empty()) {
    auto comma = body.find(',');
    std::string_view id = body.substr(0, comma);
    int v = g.variable_index(id);
    if (v < 0) throw GraphError("state references unknown variable: " + std::string(id));
    s |= 1u << v;
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return s;
}

std::string_view prune_rule_name(PruneRule r) {
  switch (r) {
    case PruneRule::None: return "none";
    case PruneRule::ZeroProbability: return "zero_probability";
    case PruneRule::CondIndependence: return "cond_independence";
    case PruneRule::DeadEnd: return "dead_end";
    default: return "unreachable";
  }
}

bool prune_zero_probability(const Transition& t, const ConstraintGraph&) {
  return t.new_eq_rows > t.new_dof;
}

bool prune_cond_independence(const Transition& t, const ConstraintGraph& g) {
  return conditional_independence_components(g, t.from, t.new_vars).size() >= 2;
}

TransitionTable TransitionTable::enumerate_transitions(const ConstraintGraph& g) {
  const int n = g.var_count();
  if (n > 20) throw GraphError("transition lattice limited to 20 variables, got " +
                               std::to_string(n));
  TransitionTable table;
  table.n_ = n;
  table.full_ = g.full_mask();

  std::vector<int> eq_rows_within(1u << n, 0);  // Σ codim of eq constraints with scope ⊆ s
  // per-state precomputation is O(2^n * l); fine at this scale
  for (StateMask s = 0; s <= table.full_; ++s) {
    int rows = 0;
    for (int c = 0; c < static_cast<int>(g.constraints().size()); ++c) {
      if (g.constraint(c).kind != ConstraintKind::Eq) continue;
      if ((g.scope_mask(c) & ~s) == 0) rows += g.constraint(c).codim;
    }
    eq_rows_within[s] = rows;
  }
  std::vector<int> dof_of(1u << n, 0);
  for (StateMask s = 0; s <= table.full_; ++s) {
    int d = 0;
    for (int v = 0; v < n; ++v)
      if (s & (1u << v)) d += g.variable(v).dim;
    dof_of[s] = d;
  }

  for (StateMask from = 0; from < table.full_; ++from) {
    const StateMask rest = table.full_ & ~from;
    // submasks of rest in increasing numeric order
    for (StateMask add = (0u - rest) & rest;; add = (add - rest) & rest) {
      Transition t;
      t.from = from;
      t.to = from | add;
      t.new_vars = add;
      t.new_dof = dof_of[add];
      t.new_eq_rows = eq_rows_within[t.to] - eq_rows_within[from];
      table.transitions_.push_back(t);
      if (add == rest) break;
    }
  }
  table.rebuild_index();
  return table;
}

void TransitionTable::apply_rule_pruning(const ConstraintGraph& g) {
  for (auto& t : transitions_) {
    if (t.pruned_by != PruneRule::None) continue;
    if (prune_zero_probability(t, g))
      t.pruned_by = PruneRule::ZeroProbability;
    else if (prune_cond_independence(t, g))
      t.pruned_by = PruneRule::CondIndependence;
  }
  rebuild_index();
}

void TransitionTable::apply_closure() {
  for (bool changed = true; changed;) {
    changed = false;

    std::unordered_map<StateMask, char> reaches_goal;  // over surviving edges
    reaches_goal[full_] = 1;
    // Edges only add variables, so scanning transitions by descending popcount
    // of `from` settles reachability in one pass.
    std::vector<int> order;
    order.reserve(transitions_.size());
    for (int i = 0; i < static_cast<int>(transitions_.size()); ++i)
      if (transitions_[i].surviving()) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::popcount(transitions_[a].from) > std::popcount(transitions_[b].from);
    });
    for (int i : order) {
      const auto& t = transitions_[i];
      if (reaches_goal.count(t.to)) reaches_goal[t.from] = 1;
    }
    for (auto& t : transitions_) {
      if (!t.surviving()) continue;
      if (!reaches_goal.count(t.to)) {
        t.pruned_by = PruneRule::DeadEnd;
        changed = true;
      }
    }

    std::unordered_map<StateMask, char> reached;  // from the empty state
    reached[0] = 1;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::popcount(transitions_[a].from) < std::popcount(transitions_[b].from);
    });
    for (int i : order) {
      const auto& t = transitions_[i];
      if (t.surviving() && reached.count(t.from)) reached[t.to] = 1;
    }
    for (auto& t : transitions_) {
      if (!t.surviving()) continue;
      if (!reached.count(t.from)) {
        t.pruned_by = PruneRule::Unreachable;
        changed = true;
      }
    }
  }
  rebuild_index();
}

TransitionTable TransitionTable::build_pruned(const ConstraintGraph& g) {
  TransitionTable table = enumerate_transitions(g);
  table.apply_rule_pruning(g);
  table.apply_closure();
  return table;
}

std::int64_t TransitionTable::pruned_count(PruneRule r) const {
  std::int64_t k = 0;
  for (const auto& t : transitions_)
    if (t.pruned_by == r) ++k;
  return k;
}

std::int64_t TransitionTable::surviving_count() const { return pruned_count(PruneRule::None); }

double TransitionTable::pruning_ratio() const {
  if (transitions_.empty()) return 0.0;
  return static_cast<double>(total() - surviving_count()) / static_cast<double>(total());
}

int TransitionTable::find(StateMask from, StateMask to) const {
  auto lo = std::lower_bound(transitions_.begin(), transitions_.end(), std::pair{from, to},
                             [](const Transition& t, const std::pair<StateMask, StateMask>& key) {
                               return std::pair{t.from, t.to} < key;
                             });
  if (lo == transitions_.end() || lo->from != from || lo->to != to) return -1;
  return static_cast<int>(lo - transitions_.begin());
}

const std::vector<int>& TransitionTable::surviving_from(StateMask s) const {
  static const std::vector<int> empty;
  auto it = surviving_from_.find(s);
  return it == surviving_from_.end() ? empty : it->second;
}

void TransitionTable::rebuild_index() {
  surviving_from_.clear();
  for (int i = 0; i < static_cast<int>(transitions_.size()); ++i)
    if (transitions_[i].surviving()) surviving_from_[transitions_[i].from].push_back(i);
}

std::string TransitionTable::to_dot(const ConstraintGraph& g) const {
  std::string out = "digraph transitions {\n";
  std::unordered_set<StateMask> states;
  for (const auto& t : transitions_) {
    if (!t.surviving()) continue;
    states.insert(t.from);
    states.insert(t.to);
  }
  std::vector<StateMask> ordered(states.begin(), states.end());
  std::sort(ordered.begin(), ordered.end());
  for (StateMask s : ordered) out += "  \"" + state_to_string(g, s) + "\";\n";
  for (const auto& t : transitions_) {
    if (!t.surviving()) continue;
    out += "  \"" + state_to_string(g, t.from) + "\" -> \"" + state_to_string(g, t.to) + "\";\n";
  }
  return out + "}\n";
}

}  // namespace cgs
