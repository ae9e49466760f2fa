#pragma once

#include <utility>
#include <vector>

#include "bps/inference.hpp"
#include "bps/phe.hpp"
#include "bps/puzzle.hpp"
#include "bps/rng.hpp"

namespace bps {

enum class TieBreak { FirstInOrder, Random };

struct PolicyOptions {
  bool prune_parent_reversal = true;
  TieBreak tie_break = TieBreak::FirstInOrder;
  // Required when tie_break is Random.
  Rng* rng = nullptr;
};

struct Decision {
  Move chosen;
  // Per-root-child diagnostics: expected distance for belief-based search,
  // best frontier value for face-value search, empty for random.
  std::vector<std::pair<Move, double>> scores;
  std::int64_t tree_nodes = 1;
};

// Full-width fixed-depth search; moves toward the frontier leaf with the
// minimal heuristic value. The frontier is the horizon level plus any goal
// leaves reached early. Internal evaluations are ignored.
Decision minimin_decide(const PuzzleState& root, int horizon,
                        const HeuristicFn& h, const GoalSpec& goal,
                        const PolicyOptions& options = {});

// Bayesian inference over the same tree, then a single move to the child
// with the smallest expected distance to the goal.
Decision bps_decide(const PuzzleState& root, int horizon, const HeuristicFn& h,
                    const PheModel& phe, const TransitionMatrix& trans,
                    const BeliefVector& prior, const GoalSpec& goal,
                    const PolicyOptions& options = {});

// Uniform choice among legal moves.
Decision random_decide(const PuzzleState& root, Rng& rng);

}  // namespace bps
