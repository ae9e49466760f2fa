#include "bps/oracle.hpp"

#include <fstream>
#include <stdexcept>
#include <utility>

namespace bps {

namespace {

// (8-i)! for i = 0..8.
constexpr std::uint32_t kSuffixFactorial[9] = {40320, 5040, 720, 120, 24,
                                               6,     2,    1,   1};

constexpr char kMagic[4] = {'B', 'P', 'S', '8'};
constexpr std::uint8_t kFormatVersion = 0x01;

}  // namespace

std::uint32_t rank(const PuzzleState& s) {
  const auto& c = s.cells();
  std::uint32_t r = 0;
  for (int i = 0; i < PuzzleState::kCells; ++i) {
    int smaller_after = 0;
    for (int j = i + 1; j < PuzzleState::kCells; ++j) {
      if (c[j] < c[i]) ++smaller_after;
    }
    r += static_cast<std::uint32_t>(smaller_after) * kSuffixFactorial[i];
  }
  return r;
}

PuzzleState unrank(std::uint32_t index) {
  if (index >= kPermutationCount) {
    throw std::out_of_range("permutation index out of range: " +
                            std::to_string(index));
  }
  std::array<std::uint8_t, PuzzleState::kCells> remaining;
  for (int i = 0; i < PuzzleState::kCells; ++i) {
    remaining[i] = static_cast<std::uint8_t>(i);
  }
  std::array<std::uint8_t, PuzzleState::kCells> cells{};
  int n_remaining = PuzzleState::kCells;
  for (int i = 0; i < PuzzleState::kCells; ++i) {
    const std::uint32_t digit = index / kSuffixFactorial[i];
    index %= kSuffixFactorial[i];
    cells[i] = remaining[digit];
    for (int j = static_cast<int>(digit); j < n_remaining - 1; ++j) {
      remaining[j] = remaining[j + 1];
    }
    --n_remaining;
  }
  return PuzzleState(cells);
}

DistanceTable::DistanceTable(GoalSpec goal, std::vector<std::uint8_t> dist)
    : goal_(std::move(goal)), dist_(std::move(dist)) {
  for (std::uint8_t d : dist_) {
    if (d == kUnreachable) continue;
    ++reachable_;
    if (d > max_distance_) max_distance_ = d;
  }
}

DistanceTable DistanceTable::build(const GoalSpec& goal) {
  std::vector<std::uint8_t> dist(kPermutationCount, kUnreachable);
  std::vector<std::uint32_t> frontier;
  std::vector<std::uint32_t> next;
  frontier.reserve(32768);
  next.reserve(32768);

  dist[rank(goal.state())] = 0;
  frontier.push_back(rank(goal.state()));
  std::uint8_t depth = 0;
  while (!frontier.empty()) {
    ++depth;
    next.clear();
    for (std::uint32_t r : frontier) {
      const PuzzleState s = unrank(r);
      for (const auto& [move, n] : neighbors(s)) {
        const std::uint32_t nr = rank(n);
        if (dist[nr] == kUnreachable) {
          dist[nr] = depth;
          next.push_back(nr);
        }
      }
    }
    frontier.swap(next);
  }
  return DistanceTable(goal, std::move(dist));
}

int DistanceTable::exact_distance(const PuzzleState& s) const {
  const std::uint8_t d = dist_[rank(s)];
  if (d == kUnreachable) {
    throw std::domain_error("state is unreachable from the goal: " +
                            s.to_string());
  }
  return d;
}

bool DistanceTable::is_toward_goal(const PuzzleState& s, Move m) const {
  return exact_distance(apply(s, m)) == exact_distance(s) - 1;
}

std::vector<std::uint64_t> DistanceTable::distance_histogram() const {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_distance_) + 1,
                                    0);
  for (std::uint8_t d : dist_) {
    if (d != kUnreachable) ++counts[d];
  }
  return counts;
}

std::vector<double> DistanceTable::distance_prior() const {
  const auto counts = distance_histogram();
  std::vector<double> prior(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    prior[i] = static_cast<double>(counts[i]) / reachable_;
  }
  return prior;
}

void DistanceTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  out.put(static_cast<char>(kFormatVersion));
  out.write(reinterpret_cast<const char*>(goal_.state().cells().data()),
            PuzzleState::kCells);
  out.write(reinterpret_cast<const char*>(dist_.data()),
            static_cast<std::streamsize>(dist_.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

DistanceTable DistanceTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::string_view(magic, 4) != std::string_view(kMagic, 4)) {
    throw std::runtime_error("bad magic bytes in " + path);
  }
  const int version = in.get();
  if (version != kFormatVersion) {
    throw std::runtime_error("unsupported table version in " + path);
  }
  std::array<std::uint8_t, PuzzleState::kCells> goal_cells{};
  in.read(reinterpret_cast<char*>(goal_cells.data()), PuzzleState::kCells);
  std::vector<std::uint8_t> dist(kPermutationCount);
  in.read(reinterpret_cast<char*>(dist.data()), kPermutationCount);
  if (!in || in.gcount() != kPermutationCount) {
    throw std::runtime_error("truncated table file: " + path);
  }
  if (in.peek() != std::ifstream::traits_type::eof()) {
    throw std::runtime_error("trailing bytes in table file: " + path);
  }
  return DistanceTable(GoalSpec(PuzzleState(goal_cells)), std::move(dist));
}

}  // namespace bps
