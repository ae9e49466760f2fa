#include "bps/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace bps {

namespace {

// Evidence-sized buffer whose lifetime is visible to MessageStats.
class Msg {
 public:
  Msg(std::size_t n, MessageStats* stats) : v_(n, 0.0), stats_(stats) {
    if (stats_) {
      ++stats_->live;
      stats_->peak_live = std::max(stats_->peak_live, stats_->live);
    }
  }
  Msg(std::vector<double> v, MessageStats* stats)
      : v_(std::move(v)), stats_(stats) {
    if (stats_) {
      ++stats_->live;
      stats_->peak_live = std::max(stats_->peak_live, stats_->live);
    }
  }
  Msg(Msg&& other) noexcept : v_(std::move(other.v_)), stats_(other.stats_) {
    other.stats_ = nullptr;
  }
  Msg(const Msg&) = delete;
  Msg& operator=(const Msg&) = delete;
  ~Msg() {
    if (stats_) --stats_->live;
  }

  std::vector<double>& vec() { return v_; }
  const std::vector<double>& vec() const { return v_; }
  std::vector<double> release() {
    if (stats_) {
      --stats_->live;
      stats_ = nullptr;
    }
    return std::move(v_);
  }

 private:
  std::vector<double> v_;
  MessageStats* stats_;
};

void normalize_or_throw(std::vector<double>& v, const char* what) {
  double sum = 0.0;
  for (double x : v) sum += x;
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw ZeroMessageError(std::string(what) +
                           ": evidence product is zero everywhere "
                           "(model/heuristic mismatch)");
  }
  for (double& x : v) x /= sum;
}

Msg lambda_rec(const SearchTree& tree, std::int32_t index, const PheModel& phe,
               const TransitionMatrix& trans, MessageStats* stats) {
  const TreeNode& node = tree.nodes[index];
  Msg acc(phe.evidence(node.h), stats);
  for (std::int32_t child : node.children) {
    Msg child_lambda = lambda_rec(tree, child, phe, trans, stats);
    Msg propagated(trans.propagate_rootward(child_lambda.vec()), stats);
    for (std::size_t o = 0; o < acc.vec().size(); ++o) {
      acc.vec()[o] *= propagated.vec()[o];
    }
  }
  normalize_or_throw(acc.vec(), "lambda message");
  return acc;
}

std::vector<double> hadamard(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

}  // namespace

double expected_outcome(const BeliefVector& b) {
  double acc = 0.0;
  for (std::size_t o = 0; o < b.size(); ++o) acc += static_cast<double>(o) * b[o];
  return acc;
}

BeliefVector lambda_message(const SearchTree& tree, std::int32_t node,
                            const PheModel& phe, const TransitionMatrix& trans,
                            MessageStats* stats) {
  return lambda_rec(tree, node, phe, trans, stats).release();
}

SearchTree build_tree(const PuzzleState& root, const TreeOptions& options,
                      const HeuristicFn& h) {
  if (options.horizon < 1) {
    throw std::invalid_argument("horizon must be at least 1");
  }
  SearchTree tree;
  tree.horizon = options.horizon;
  tree.nodes.push_back(TreeNode{root, std::nullopt, h(root), 0, -1, {}});
  // Expansion is by index; nodes end up in breadth-order with children in
  // neighbor order either way.
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (tree.nodes[i].depth >= options.horizon) continue;
    if (options.stop_at && tree.nodes[i].state == *options.stop_at) continue;
    const PuzzleState state = tree.nodes[i].state;
    const auto move = tree.nodes[i].move;
    const int depth = tree.nodes[i].depth;
    for (Move m : kMoveOrder) {
      if (!is_legal(state, m)) continue;
      if (options.prune_parent_reversal && move && m == inverse(*move)) continue;
      const PuzzleState next = apply(state, m);
      const auto child_index = static_cast<std::int32_t>(tree.nodes.size());
      tree.nodes[i].children.push_back(child_index);
      tree.nodes.push_back(TreeNode{next, m, h(next), depth + 1,
                                    static_cast<std::int32_t>(i), {}});
    }
  }
  return tree;
}

std::vector<std::pair<Move, BeliefVector>> decision_beliefs(
    const SearchTree& tree, const BeliefVector& prior, const PheModel& phe,
    const TransitionMatrix& trans) {
  const TreeNode& root = tree.root();
  const std::size_t n = prior.size();

  // Rootward products for each root child, plus their transition-propagated
  // images at the root.
  std::vector<BeliefVector> lambdas;
  std::vector<BeliefVector> at_root;
  lambdas.reserve(root.children.size());
  at_root.reserve(root.children.size());
  for (std::int32_t child : root.children) {
    lambdas.push_back(lambda_message(tree, child, phe, trans));
    at_root.push_back(trans.propagate_rootward(lambdas.back()));
  }

  // The root's own factors: prior times its heuristic evidence.
  const BeliefVector root_evidence = phe.evidence(root.h);
  BeliefVector root_factor(n);
  for (std::size_t o = 0; o < n; ++o) {
    root_factor[o] = prior[o] * root_evidence[o];
  }

  std::vector<std::pair<Move, BeliefVector>> result;
  result.reserve(root.children.size());
  for (std::size_t i = 0; i < root.children.size(); ++i) {
    // Leafward message: everything outside child i's subtree.
    BeliefVector pi_pre = root_factor;
    for (std::size_t j = 0; j < root.children.size(); ++j) {
      if (j == i) continue;
      for (std::size_t o = 0; o < n; ++o) pi_pre[o] *= at_root[j][o];
    }
    normalize_or_throw(pi_pre, "leafward message");
    BeliefVector belief = hadamard(trans.propagate_leafward(pi_pre), lambdas[i]);
    normalize_or_throw(belief, "child belief");
    result.emplace_back(*tree.nodes[root.children[i]].move, std::move(belief));
  }
  return result;
}

BeliefVector root_belief(const SearchTree& tree, const BeliefVector& prior,
                         const PheModel& phe, const TransitionMatrix& trans) {
  BeliefVector belief = hadamard(prior, lambda_message(tree, 0, phe, trans));
  normalize_or_throw(belief, "root belief");
  return belief;
}

std::vector<BeliefVector> all_node_beliefs(const SearchTree& tree,
                                           const BeliefVector& prior,
                                           const PheModel& phe,
                                           const TransitionMatrix& trans) {
  const std::size_t n_nodes = tree.size();
  const std::size_t n = prior.size();

  // Upward sweep, children before parents (children always follow their
  // parent in the node array).
  std::vector<BeliefVector> lambda(n_nodes);
  for (std::size_t i = n_nodes; i-- > 0;) {
    const TreeNode& node = tree.nodes[i];
    BeliefVector acc = phe.evidence(node.h);
    for (std::int32_t child : node.children) {
      const auto propagated = trans.propagate_rootward(lambda[child]);
      for (std::size_t o = 0; o < n; ++o) acc[o] *= propagated[o];
    }
    normalize_or_throw(acc, "lambda message");
    lambda[i] = std::move(acc);
  }

  // Downward sweep: pi[i] carries everything outside node i's subtree.
  std::vector<BeliefVector> pi(n_nodes);
  std::vector<BeliefVector> beliefs(n_nodes);
  pi[0] = prior;
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const TreeNode& node = tree.nodes[i];
    beliefs[i] = hadamard(pi[i], lambda[i]);
    normalize_or_throw(beliefs[i], "node belief");
    if (node.children.empty()) continue;

    const BeliefVector evidence = phe.evidence(node.h);
    std::vector<BeliefVector> at_node(node.children.size());
    for (std::size_t c = 0; c < node.children.size(); ++c) {
      at_node[c] = trans.propagate_rootward(lambda[node.children[c]]);
    }
    for (std::size_t c = 0; c < node.children.size(); ++c) {
      BeliefVector out = hadamard(pi[i], evidence);
      for (std::size_t s = 0; s < node.children.size(); ++s) {
        if (s == c) continue;
        for (std::size_t o = 0; o < n; ++o) out[o] *= at_node[s][o];
      }
      normalize_or_throw(out, "leafward message");
      pi[node.children[c]] = trans.propagate_leafward(out);
    }
  }
  return beliefs;
}

std::vector<BeliefVector> brute_force_beliefs(const SearchTree& tree,
                                              const BeliefVector& prior,
                                              const PheModel& phe,
                                              const TransitionMatrix& trans,
                                              std::uint64_t cap) {
  const std::size_t n_nodes = tree.size();
  const std::size_t domain = prior.size();

  double combos = 1.0;
  for (std::size_t i = 0; i < n_nodes; ++i) {
    combos *= static_cast<double>(domain);
    if (combos > static_cast<double>(cap)) {
      throw std::length_error("joint enumeration exceeds cap");
    }
  }

  std::vector<BeliefVector> marginals(n_nodes, BeliefVector(domain, 0.0));
  std::vector<std::size_t> outcome(n_nodes, 0);
  while (true) {
    // Weight of this complete outcome assignment.
    double w = prior[outcome[0]];
    for (std::size_t i = 0; i < n_nodes && w > 0.0; ++i) {
      const TreeNode& node = tree.nodes[i];
      w *= phe.likelihood().at(static_cast<std::size_t>(node.h), outcome[i]);
      if (node.parent >= 0) {
        w *= trans.p().at(outcome[node.parent], outcome[i]);
      }
    }
    if (w > 0.0) {
      for (std::size_t i = 0; i < n_nodes; ++i) marginals[i][outcome[i]] += w;
    }
    // Odometer increment.
    std::size_t pos = 0;
    while (pos < n_nodes && ++outcome[pos] == domain) {
      outcome[pos] = 0;
      ++pos;
    }
    if (pos == n_nodes) break;
  }
  for (auto& m : marginals) normalize_or_throw(m, "joint marginal");
  return marginals;
}

}  // namespace bps
