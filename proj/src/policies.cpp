#include "bps/policies.hpp"

#include <limits>
#include <stdexcept>

namespace bps {

namespace {

void check_decidable(const PuzzleState& root, int horizon,
                     const GoalSpec& goal) {
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (root == goal.state()) {
    throw std::invalid_argument("no decision to make at the goal state");
  }
}

// Index of the minimal score, ties by position or by uniform choice.
std::size_t pick_min(const std::vector<std::pair<Move, double>>& scores,
                     const PolicyOptions& options) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [move, score] : scores) best = std::min(best, score);
  std::vector<std::size_t> argmins;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i].second == best) argmins.push_back(i);
  }
  if (options.tie_break == TieBreak::Random && argmins.size() > 1) {
    if (!options.rng) {
      throw std::invalid_argument("random tie-breaking needs an rng");
    }
    return argmins[options.rng->below(argmins.size())];
  }
  return argmins.front();
}

int min_frontier_value(const SearchTree& tree, std::int32_t node) {
  const TreeNode& n = tree.nodes[node];
  if (n.children.empty()) return n.h;
  int best = std::numeric_limits<int>::max();
  for (std::int32_t child : n.children) {
    best = std::min(best, min_frontier_value(tree, child));
  }
  return best;
}

}  // namespace

Decision minimin_decide(const PuzzleState& root, int horizon,
                        const HeuristicFn& h, const GoalSpec& goal,
                        const PolicyOptions& options) {
  check_decidable(root, horizon, goal);
  const SearchTree tree = build_tree(
      root, {horizon, options.prune_parent_reversal, goal.state()}, h);

  Decision decision;
  decision.tree_nodes = static_cast<std::int64_t>(tree.size());
  for (std::int32_t child : tree.root().children) {
    decision.scores.emplace_back(*tree.nodes[child].move,
                                 min_frontier_value(tree, child));
  }
  decision.chosen = decision.scores[pick_min(decision.scores, options)].first;
  return decision;
}

Decision bps_decide(const PuzzleState& root, int horizon, const HeuristicFn& h,
                    const PheModel& phe, const TransitionMatrix& trans,
                    const BeliefVector& prior, const GoalSpec& goal,
                    const PolicyOptions& options) {
  check_decidable(root, horizon, goal);
  const SearchTree tree = build_tree(
      root, {horizon, options.prune_parent_reversal, goal.state()}, h);

  Decision decision;
  decision.tree_nodes = static_cast<std::int64_t>(tree.size());
  for (const auto& [move, belief] : decision_beliefs(tree, prior, phe, trans)) {
    decision.scores.emplace_back(move, expected_outcome(belief));
  }
  decision.chosen = decision.scores[pick_min(decision.scores, options)].first;
  return decision;
}

Decision random_decide(const PuzzleState& root, Rng& rng) {
  const auto moves = neighbors(root);
  Decision decision;
  decision.chosen = moves[rng.below(moves.size())].first;
  decision.tree_nodes = 1;
  return decision;
}

}  // namespace bps
