#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bps/puzzle.hpp"

namespace bps {

inline constexpr std::uint32_t kPermutationCount = 362880;  // 9!
inline constexpr std::uint8_t kUnreachable = 255;

// Lexicographic rank of the cell sequence among all permutations of 0..8.
std::uint32_t rank(const PuzzleState& s);

// Inverse of rank. Throws std::out_of_range for index >= 9!.
PuzzleState unrank(std::uint32_t index);

// Exact distance-to-goal for every reachable state, built by breadth-first
// enumeration from the goal. One byte per permutation rank; 255 marks the
// unreachable parity class.
class DistanceTable {
 public:
  static DistanceTable build(const GoalSpec& goal);

  // Binary format: "BPS8", version byte 0x01, 9 goal cells, 9! distance
  // bytes in rank order.
  static DistanceTable load(const std::string& path);
  void save(const std::string& path) const;

  const GoalSpec& goal() const { return goal_; }
  std::uint8_t distance_at_rank(std::uint32_t r) const { return dist_[r]; }
  bool reachable(const PuzzleState& s) const {
    return dist_[rank(s)] != kUnreachable;
  }

  // Throws std::domain_error for states in the other parity class.
  int exact_distance(const PuzzleState& s) const;

  // True iff the move strictly decreases exact distance.
  bool is_toward_goal(const PuzzleState& s, Move m) const;

  std::uint32_t reachable_count() const { return reachable_; }
  int max_distance() const { return max_distance_; }

  // Counts per distance value, indexed 0..max_distance(); sums to the
  // reachable count.
  std::vector<std::uint64_t> distance_histogram() const;

  // The histogram normalized to a probability vector: the default prior over
  // outcomes.
  std::vector<double> distance_prior() const;

  bool operator==(const DistanceTable& other) const {
    return goal_ == other.goal_ && dist_ == other.dist_;
  }

 private:
  DistanceTable(GoalSpec goal, std::vector<std::uint8_t> dist);

  GoalSpec goal_;
  std::vector<std::uint8_t> dist_;
  std::uint32_t reachable_ = 0;
  int max_distance_ = 0;
};

}  // namespace bps
