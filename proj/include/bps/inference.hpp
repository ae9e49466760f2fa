#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bps/phe.hpp"
#include "bps/puzzle.hpp"

namespace bps {

// Normalized probability vector over the outcome domain 0..O_max.
using BeliefVector = std::vector<double>;

double expected_outcome(const BeliefVector& b);

// Raised when an evidence product vanishes everywhere. With a model
// calibrated on the same heuristic and state space this cannot happen; it
// signals a model/heuristic mismatch rather than a condition to renormalize
// away.
struct ZeroMessageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TreeNode {
  PuzzleState state;
  std::optional<Move> move;  // generating move; empty at the root
  int h = 0;
  int depth = 0;
  std::int32_t parent = -1;
  std::vector<std::int32_t> children;  // in neighbor order
};

// Full-width fixed-depth tree. Every node carries its heuristic value;
// internal evaluations participate in inference like frontier ones.
struct SearchTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  int horizon = 0;

  const TreeNode& root() const { return nodes.front(); }
  std::size_t size() const { return nodes.size(); }
};

struct TreeOptions {
  int horizon = 1;
  // Skip the child that undoes the generating move. Matches the expansion
  // rule implied by an effective branching factor of ~1.7.
  bool prune_parent_reversal = true;
  // Nodes equal to this state become leaves wherever they appear.
  std::optional<PuzzleState> stop_at;
};

SearchTree build_tree(const PuzzleState& root, const TreeOptions& options,
                      const HeuristicFn& h);

// Counts evidence-sized vectors alive during a rootward pass. The pass is
// depth-first, so peak_live stays proportional to tree depth even though the
// tree itself is materialized.
struct MessageStats {
  int live = 0;
  int peak_live = 0;
};

// Rootward evidence product at a node: the node's own evidence column
// componentwise-multiplied with each child's transition-propagated message.
// Intermediate messages are normalized for numerical conditioning; beliefs
// are invariant to that scale.
BeliefVector lambda_message(const SearchTree& tree, std::int32_t node,
                            const PheModel& phe, const TransitionMatrix& trans,
                            MessageStats* stats = nullptr);

// Posterior over outcomes for each root child given all evidence in the
// tree: the child's rootward product combined with the leafward message
// carrying the root's prior, the root's own evidence, and the sibling
// subtrees.
std::vector<std::pair<Move, BeliefVector>> decision_beliefs(
    const SearchTree& tree, const BeliefVector& prior, const PheModel& phe,
    const TransitionMatrix& trans);

BeliefVector root_belief(const SearchTree& tree, const BeliefVector& prior,
                         const PheModel& phe, const TransitionMatrix& trans);

// Posterior for every node via a full two-pass sweep. Diagnostic surface
// (belief dumps); decisions only ever need the root's children.
std::vector<BeliefVector> all_node_beliefs(const SearchTree& tree,
                                           const BeliefVector& prior,
                                           const PheModel& phe,
                                           const TransitionMatrix& trans);

// Joint enumeration over every outcome assignment, marginalized per node.
// Exponential in node count; serves as the independent oracle for the
// message-passing path. Throws std::length_error when domain^nodes exceeds
// the cap.
std::vector<BeliefVector> brute_force_beliefs(const SearchTree& tree,
                                              const BeliefVector& prior,
                                              const PheModel& phe,
                                              const TransitionMatrix& trans,
                                              std::uint64_t cap = 1u << 22);

}  // namespace bps
