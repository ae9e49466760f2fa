#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bps/matrix.hpp"
#include "bps/oracle.hpp"
#include "bps/puzzle.hpp"

namespace bps {

struct Provenance {
  enum class Kind { Full, Sampled };
  Kind kind = Kind::Full;
  std::uint32_t n_random = 0;
  std::uint32_t n_nearest = 0;

  static Provenance full() { return {}; }
  static Provenance sampled(std::uint32_t n_random, std::uint32_t n_nearest) {
    return {Kind::Sampled, n_random, n_nearest};
  }

  std::string to_string() const;
  static Provenance parse(const std::string& text);

  bool operator==(const Provenance&) const = default;
};

enum class HeuristicVariant { Plain, AllBeaconsRemoved, GoalOnlyBeacon };

const char* to_string(HeuristicVariant v);
HeuristicVariant parse_variant(const std::string& text);

// States whose evaluation perfectly identifies their distance; under plain
// Manhattan Distance these are the states with h <= 3.
inline constexpr int kBeaconThreshold = 3;
inline constexpr int kBeaconReplacementValue = 4;

// Joint counts over (heuristic value, outcome): counts.at(h, o). Full
// calibration stores integer counts summing to the reachable-state total;
// sampled calibration may hold fractional mass in interpolated rows.
struct JointCountTable {
  Matrix counts;
  Provenance provenance;
  std::uint64_t seed = 0;
  HeuristicVariant variant = HeuristicVariant::Plain;

  double total() const { return counts.total(); }
};

// One pass over every reachable state: counts(h(s), d(s)) += 1.
JointCountTable calibrate_full(const DistanceTable& table, const HeuristicFn& h,
                               HeuristicVariant variant = HeuristicVariant::Plain);

// Counts from n_random states drawn uniformly without replacement plus the
// n_nearest states of smallest exact distance (ties by rank). Heuristic
// values never observed in the sample get their outcome row interpolated
// from the nearest observed rows, shifted to preserve the o-h offset, with
// 1e-6 smoothing over o >= h.
JointCountTable calibrate_sampled(const DistanceTable& table,
                                  const HeuristicFn& h, std::uint32_t n_random,
                                  std::uint32_t n_nearest, std::uint64_t seed,
                                  HeuristicVariant variant = HeuristicVariant::Plain);

// Conditional distributions derived from joint counts.
//   likelihood.at(h, o) = P(h | o)   columns normalized over h
//   posterior.at(h, o)  = P(o | h)   rows normalized over o
class PheModel {
 public:
  static PheModel from_counts(const JointCountTable& counts);
  static PheModel from_likelihood(Matrix likelihood);

  // P(h | o) = [h == o]: heuristic values taken at face value. Used where a
  // perfectly calibrated evaluation is needed (tests, reductions to
  // face-value search).
  static PheModel delta(std::size_t n_values);

  const Matrix& likelihood() const { return likelihood_; }
  const Matrix& posterior() const { return posterior_; }
  int outcome_domain() const { return static_cast<int>(likelihood_.cols()) - 1; }
  int max_heuristic() const { return static_cast<int>(likelihood_.rows()) - 1; }

  // The evidence vector over outcomes for an observed heuristic value:
  // P(h | o) as a function of o.
  std::vector<double> evidence(int h) const;

 private:
  Matrix likelihood_;
  Matrix posterior_;
};

// All reachable states with h(s) <= threshold, sorted by rank.
std::vector<PuzzleState> find_beacons(const DistanceTable& table,
                                      const HeuristicFn& h,
                                      int threshold = kBeaconThreshold);

// AllBeaconsRemoved: h = 4 at every beacon. GoalOnlyBeacon: h = 4 at every
// beacon except the goal. Plain: the base heuristic unchanged.
HeuristicFn mask_beacons(HeuristicFn base, HeuristicVariant variant,
                         const std::vector<PuzzleState>& beacons,
                         const GoalSpec& goal);

// P(O_child = j | O_parent = i) over the outcome domain. Adjacent states'
// distances differ by exactly 1, so the empirical matrix has support only at
// |i - j| = 1.
class TransitionMatrix {
 public:
  // Fraction of (state, neighbor) pairs at (d(state) = i, d(neighbor) = j),
  // row-normalized.
  static TransitionMatrix calibrate(const DistanceTable& table);

  // p(i-1|i) = p(i+1|i) = 0.5, renormalized at the domain edges. Ablation
  // alternative to the empirical matrix.
  static TransitionMatrix uniform_steps(std::size_t n_outcomes);

  static TransitionMatrix from_matrix(Matrix p);

  const Matrix& p() const { return p_; }
  std::size_t size() const { return p_.rows(); }

  // Rootward: m(o_parent) = sum_c p(o_parent, c) * child(c).
  std::vector<double> propagate_rootward(const std::vector<double>& child_msg) const;
  // Leafward: m(o_child) = sum_p p(p, o_child) * parent(p).
  std::vector<double> propagate_leafward(const std::vector<double>& parent_msg) const;

 private:
  explicit TransitionMatrix(Matrix p) : p_(std::move(p)) {}
  Matrix p_;
};

// Text format shared by the model files: one header line
//   <kind> <rows> <cols> <variant> <provenance> <seed>
// followed by one row of decimal values per line.
void write_matrix_text(std::ostream& out, const std::string& kind,
                       const Matrix& m, const std::string& variant,
                       const std::string& provenance, std::uint64_t seed);
Matrix read_matrix_text(std::istream& in, const std::string& expected_kind,
                        std::string* variant, std::string* provenance,
                        std::uint64_t* seed);

void save_counts(const JointCountTable& counts, const std::string& path);
JointCountTable load_counts(const std::string& path);

void save_transition(const TransitionMatrix& t, const std::string& path);
TransitionMatrix load_transition(const std::string& path);

}  // namespace bps
