#include "cgs/mcts.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cgs {

double auto_lambda(std::span<const double> rollout_costs) {
  double mean = 0;
  if (!rollout_costs.empty()) {
    for (double c : rollout_costs) mean += c;
    mean /= static_cast<double>(rollout_costs.size());
  }
  double lambda = 1.0 / (mean + 1.0);
  return std::clamp(lambda, 1e-6, 1.0 - 1e-6);
}

int select_child_index(const SearchNode& node, std::span<const StateMask> actions, double c) {
  if (actions.empty()) throw std::logic_error("select_child: no available actions");
  int best = -1;
  double best_score = 0;
  const double log_n = std::log(static_cast<double>(std::max(node.visits, 1)));
  for (int i = 0; i < static_cast<int>(actions.size()); ++i) {
    const SearchNode* child = node.child(actions[i]);
    if (!child || child->visits == 0) return i;  // unvisited first, declaration order
    const double score =
        child->q_value + c * std::sqrt(log_n / static_cast<double>(child->visits));
    if (best < 0 || score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

StateMask select_child(const SearchNode& node, std::span<const StateMask> actions, double c) {
  return actions[static_cast<std::size_t>(select_child_index(node, actions, c))];
}

void backpropagate(std::span<SearchNode* const> path, double reward) {
  for (SearchNode* node : path) {
    node->visits += 1;
    node->q_value += (reward - node->q_value) / static_cast<double>(node->visits);
  }
}

void WarmstartStore::absorb(const SearchNode& root) {
  std::vector<const SearchNode*> stack{&root};
  while (!stack.empty()) {
    const SearchNode* node = stack.back();
    stack.pop_back();
    if (node->visits > 0 && node != &root) {
      auto& e = entries[node->signature];
      e.mean_q = (e.mean_q * e.instance_count + node->q_value) / (e.instance_count + 1);
      e.instance_count += 1;
    }
    for (const auto& [s, child] : node->children) stack.push_back(child.get());
  }
}

WarmstartStore WarmstartStore::parse(std::string_view text) {
  WarmstartStore store;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string sig;
    double mean_q;
    int count;
    if (!(ls >> sig)) continue;
    if (sig[0] == '#') continue;
    if (!(ls >> mean_q >> count) || count < 1)
      throw GraphError("warmstart store line " + std::to_string(lineno) + " is malformed");
    store.entries[sig] = {mean_q, count};
  }
  return store;
}

std::string WarmstartStore::serialize() const {
  std::vector<std::pair<std::string, Entry>> sorted(entries.begin(), entries.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::ostringstream out;
  out.precision(17);
  for (const auto& [sig, e] : sorted) out << sig << " " << e.mean_q << " " << e.instance_count << "\n";
  return out.str();
}

WarmstartStore WarmstartStore::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open warmstart store: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void WarmstartStore::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write warmstart store: " + path);
  out << serialize();
}

SearchTree::SearchTree(const ConstraintGraph& g, const TransitionTable& table, double exploration_c,
                       const WarmstartStore* priors)
    : g_(&g), table_(&table), c_(exploration_c), priors_(priors) {
  root_.state = 0;
  root_.signature = state_to_string(g, 0);
}

SearchNode* SearchTree::ensure_child(SearchNode& parent, StateMask to) {
  if (SearchNode* existing = parent.child(to)) return existing;
  auto node = std::make_unique<SearchNode>();
  node->state = to;
  node->signature = parent.signature + ">" + state_to_string(*g_, to);
  if (priors_) {
    auto it = priors_->entries.find(node->signature);
    if (it != priors_->entries.end()) {
      node->q_value = it->second.mean_q;
      node->visits = priors_->n_equiv;
    }
  }
  SearchNode* raw = node.get();
  parent.children.emplace_back(to, std::move(node));
  ++node_count_;
  return raw;
}

void SearchTree::apply_warmstart(const WarmstartStore& store) {
  priors_ = &store;
  std::vector<SearchNode*> stack{&root_};
  while (!stack.empty()) {
    SearchNode* node = stack.back();
    stack.pop_back();
    auto it = store.entries.find(node->signature);
    if (it != store.entries.end() && node != &root_) {
      node->q_value = it->second.mean_q;
      node->visits = store.n_equiv;
    }
    for (auto& [s, child] : node->children) stack.push_back(child.get());
  }
}

RolloutResult SearchTree::rollout(const OpFn& op, const RewardConfig& reward, Rng& rng) {
  RolloutResult result;
  std::vector<SearchNode*> path{&root_};
  result.sequence.push_back(0);

  SearchNode* node = &root_;
  StateMask state = 0;
  bool in_tree = true;
  bool expanded = false;
  bool failed = false;
  const StateMask full = table_->full_mask();

  while (state != full) {
    const auto& action_idx = table_->surviving_from(state);
    if (action_idx.empty()) {  // no surviving continuation (pre-closure tables)
      failed = true;
      break;
    }
    std::vector<StateMask> actions;
    actions.reserve(action_idx.size());
    for (int i : action_idx) actions.push_back(table_->at(i).to);

    int pick;
    if (in_tree && !expanded) {
      pick = select_child_index(*node, actions, c_);
    } else {
      pick = rng.uniform_int(static_cast<int>(actions.size()));
    }
    const Transition& t = table_->at(action_idx[pick]);

    OpOutcome outcome = op(t, rng);
    result.total_cost += outcome.cost;

    // The attempted child joins the tree (at most one new node per rollout)
    // so failures are charged to the action that caused them.
    if (in_tree && !expanded) {
      SearchNode* child = node->child(t.to);
      if (!child) {
        child = ensure_child(*node, t.to);
        expanded = true;
      }
      node = child;
      path.push_back(node);
      if (expanded) in_tree = false;
    }

    if (!outcome.feasible) {
      failed = true;
      break;
    }
    state = t.to;
    result.sequence.push_back(state);
  }

  result.reached_goal = !failed && state == full;
  const double lam = reward.lambda;
  result.reward = (1.0 - lam) * reward.r_g * (result.reached_goal ? 1.0 : 0.0) -
                  lam * result.total_cost;
  backpropagate(path, result.reward);
  return result;
}

}  // namespace cgs
