#include "bps/puzzle.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bps {

namespace {

int find_blank(const std::array<std::uint8_t, PuzzleState::kCells>& cells) {
  for (int i = 0; i < PuzzleState::kCells; ++i) {
    if (cells[i] == 0) return i;
  }
  return -1;
}

void check_permutation(const std::array<std::uint8_t, PuzzleState::kCells>& cells) {
  std::array<bool, PuzzleState::kCells> seen{};
  for (std::uint8_t v : cells) {
    if (v >= PuzzleState::kCells || seen[v]) {
      throw std::invalid_argument("puzzle state is not a permutation of 0..8");
    }
    seen[v] = true;
  }
}

// Parity of the tile sequence ignoring the blank. On a width-3 board every
// move preserves it, so it splits the permutations into the two
// reachability classes.
bool inversion_parity_odd(const PuzzleState& s) {
  int inversions = 0;
  const auto& c = s.cells();
  for (int i = 0; i < PuzzleState::kCells; ++i) {
    if (c[i] == 0) continue;
    for (int j = i + 1; j < PuzzleState::kCells; ++j) {
      if (c[j] != 0 && c[j] < c[i]) ++inversions;
    }
  }
  return inversions % 2 != 0;
}

}  // namespace

Move inverse(Move m) {
  switch (m) {
    case Move::Up: return Move::Down;
    case Move::Down: return Move::Up;
    case Move::Left: return Move::Right;
    case Move::Right: return Move::Left;
  }
  throw std::invalid_argument("bad move value");
}

const char* to_string(Move m) {
  switch (m) {
    case Move::Up: return "up";
    case Move::Down: return "down";
    case Move::Left: return "left";
    case Move::Right: return "right";
  }
  return "?";
}

Move parse_move(std::string_view text) {
  for (Move m : kMoveOrder) {
    if (text == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown move: " + std::string(text));
}

PuzzleState::PuzzleState() {
  for (int i = 0; i < kCells; ++i) cells_[i] = static_cast<std::uint8_t>(i);
  blank_ = 0;
}

PuzzleState::PuzzleState(const std::array<std::uint8_t, kCells>& cells)
    : cells_(cells) {
  check_permutation(cells_);
  blank_ = static_cast<std::int8_t>(find_blank(cells_));
}

PuzzleState PuzzleState::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::array<std::uint8_t, kCells> cells{};
  for (int i = 0; i < kCells; ++i) {
    int v;
    if (!(in >> v) || v < 0 || v >= kCells) {
      throw std::invalid_argument("expected 9 integers in 0..8: " +
                                  std::string(text));
    }
    cells[i] = static_cast<std::uint8_t>(v);
  }
  int extra;
  if (in >> extra) {
    throw std::invalid_argument("expected exactly 9 integers: " +
                                std::string(text));
  }
  return PuzzleState(cells);
}

std::string PuzzleState::to_string() const {
  std::string out;
  for (int i = 0; i < kCells; ++i) {
    if (i > 0) out += ' ';
    out += static_cast<char>('0' + cells_[i]);
  }
  return out;
}

GoalSpec::GoalSpec(PuzzleState goal) : state_(goal) {
  for (int i = 0; i < PuzzleState::kCells; ++i) {
    tile_cell_[state_.cell(i)] = static_cast<std::uint8_t>(i);
  }
}

bool is_legal(const PuzzleState& s, Move m) {
  const int row = s.blank_pos() / PuzzleState::kSide;
  const int col = s.blank_pos() % PuzzleState::kSide;
  switch (m) {
    case Move::Up: return row > 0;
    case Move::Down: return row < PuzzleState::kSide - 1;
    case Move::Left: return col > 0;
    case Move::Right: return col < PuzzleState::kSide - 1;
  }
  return false;
}

PuzzleState apply(const PuzzleState& s, Move m) {
  if (!is_legal(s, m)) {
    throw std::invalid_argument(std::string("illegal move ") + to_string(m) +
                                " in state " + s.to_string());
  }
  int delta = 0;
  switch (m) {
    case Move::Up: delta = -PuzzleState::kSide; break;
    case Move::Down: delta = PuzzleState::kSide; break;
    case Move::Left: delta = -1; break;
    case Move::Right: delta = 1; break;
  }
  auto cells = s.cells();
  const int blank = s.blank_pos();
  std::swap(cells[blank], cells[blank + delta]);
  return PuzzleState(cells);
}

std::vector<std::pair<Move, PuzzleState>> neighbors(const PuzzleState& s) {
  std::vector<std::pair<Move, PuzzleState>> out;
  out.reserve(4);
  for (Move m : kMoveOrder) {
    if (is_legal(s, m)) out.emplace_back(m, apply(s, m));
  }
  return out;
}

int manhattan_distance(const PuzzleState& s, const GoalSpec& g) {
  int total = 0;
  for (int i = 0; i < PuzzleState::kCells; ++i) {
    const std::uint8_t tile = s.cell(i);
    if (tile == 0) continue;
    const int j = g.tile_cell(tile);
    total += std::abs(i / PuzzleState::kSide - j / PuzzleState::kSide) +
             std::abs(i % PuzzleState::kSide - j % PuzzleState::kSide);
  }
  return total;
}

bool solvable(const PuzzleState& s, const GoalSpec& g) {
  return inversion_parity_odd(s) == inversion_parity_odd(g.state());
}

HeuristicFn manhattan_heuristic(GoalSpec g) {
  return [g = std::move(g)](const PuzzleState& s) {
    return manhattan_distance(s, g);
  };
}

}  // namespace bps
