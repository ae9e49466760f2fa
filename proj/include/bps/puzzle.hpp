#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bps {

// Direction the blank moves.
enum class Move : std::uint8_t { Up, Down, Left, Right };

inline constexpr std::array<Move, 4> kMoveOrder = {Move::Up, Move::Down,
                                                   Move::Left, Move::Right};

Move inverse(Move m);
const char* to_string(Move m);
Move parse_move(std::string_view text);

// A 3x3 sliding-tile configuration. cells[i] is the tile at board cell i
// (row-major), 0 marks the blank. Immutable value type; construction rejects
// anything that is not a permutation of 0..8.
class PuzzleState {
 public:
  static constexpr int kSide = 3;
  static constexpr int kCells = 9;

  // Default layout: blank at cell 0, tiles 1..8 row-major.
  PuzzleState();
  explicit PuzzleState(const std::array<std::uint8_t, kCells>& cells);

  // Parses "0 1 2 3 4 5 6 7 8" (9 space-separated integers, 0 = blank).
  static PuzzleState parse(std::string_view text);
  std::string to_string() const;

  const std::array<std::uint8_t, kCells>& cells() const { return cells_; }
  std::uint8_t cell(int i) const { return cells_[i]; }
  int blank_pos() const { return blank_; }

  bool operator==(const PuzzleState&) const = default;

 private:
  std::array<std::uint8_t, kCells> cells_;
  std::int8_t blank_;
};

// Fixed goal configuration plus a tile -> goal position index used by the
// Manhattan Distance evaluation.
class GoalSpec {
 public:
  GoalSpec() : GoalSpec(PuzzleState{}) {}
  explicit GoalSpec(PuzzleState goal);

  const PuzzleState& state() const { return state_; }
  int tile_cell(std::uint8_t tile) const { return tile_cell_[tile]; }

  bool operator==(const GoalSpec&) const = default;

 private:
  PuzzleState state_;
  std::array<std::uint8_t, PuzzleState::kCells> tile_cell_;
};

bool is_legal(const PuzzleState& s, Move m);

// Blank swapped with the adjacent tile in direction m. Throws
// std::invalid_argument if the blank would leave the board.
PuzzleState apply(const PuzzleState& s, Move m);

// Legal blank moves in the fixed order Up, Down, Left, Right.
std::vector<std::pair<Move, PuzzleState>> neighbors(const PuzzleState& s);

// Sum over tiles 1..8 of row + column displacement; the blank contributes 0.
int manhattan_distance(const PuzzleState& s, const GoalSpec& g);

// True iff s and g are in the same reachability class (9!/2 states each).
bool solvable(const PuzzleState& s, const GoalSpec& g);

using HeuristicFn = std::function<int(const PuzzleState&)>;

HeuristicFn manhattan_heuristic(GoalSpec g);

}  // namespace bps
