#include "bps/phe.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bps/rng.hpp"

namespace bps {

namespace {

constexpr double kInterpolationSmoothing = 1e-6;

// Heuristic value of every reachable state, indexed by rank; -1 elsewhere.
std::vector<std::int16_t> evaluate_all(const DistanceTable& table,
                                       const HeuristicFn& h) {
  std::vector<std::int16_t> values(kPermutationCount, -1);
  for (std::uint32_t r = 0; r < kPermutationCount; ++r) {
    if (table.distance_at_rank(r) == kUnreachable) continue;
    values[r] = static_cast<std::int16_t>(h(unrank(r)));
  }
  return values;
}

int max_value(const std::vector<std::int16_t>& values) {
  std::int16_t m = 0;
  for (std::int16_t v : values) m = std::max(m, v);
  return m;
}

std::vector<std::uint32_t> reachable_ranks(const DistanceTable& table) {
  std::vector<std::uint32_t> ranks;
  ranks.reserve(table.reachable_count());
  for (std::uint32_t r = 0; r < kPermutationCount; ++r) {
    if (table.distance_at_rank(r) != kUnreachable) ranks.push_back(r);
  }
  return ranks;
}

std::vector<double> normalized(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  std::vector<double> out(v.size(), 0.0);
  if (s > 0.0) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / s;
  }
  return out;
}

// out[o] = in[o - offset]; mass shifted past either end is dropped.
std::vector<double> shifted(const std::vector<double>& in, int offset) {
  std::vector<double> out(in.size(), 0.0);
  for (std::size_t o = 0; o < in.size(); ++o) {
    const int src = static_cast<int>(o) - offset;
    if (src >= 0 && src < static_cast<int>(in.size())) out[o] = in[src];
  }
  return out;
}

void fill_missing_rows(Matrix& counts) {
  const std::size_t n_h = counts.rows();
  const std::size_t n_o = counts.cols();
  std::vector<bool> observed(n_h);
  for (std::size_t h = 0; h < n_h; ++h) observed[h] = counts.row_sum(h) > 0.0;

  for (std::size_t h = 0; h < n_h; ++h) {
    if (observed[h]) continue;
    int lo = -1, hi = -1;
    for (int i = static_cast<int>(h) - 1; i >= 0; --i) {
      if (observed[i]) { lo = i; break; }
    }
    for (int i = static_cast<int>(h) + 1; i < static_cast<int>(n_h); ++i) {
      if (observed[i]) { hi = i; break; }
    }

    std::vector<double> fill(n_o, 0.0);
    if (lo >= 0 && hi >= 0) {
      const auto p_lo = shifted(normalized(counts.row(lo)), static_cast<int>(h) - lo);
      const auto p_hi = shifted(normalized(counts.row(hi)), static_cast<int>(h) - hi);
      const double w = static_cast<double>(h - lo) / (hi - lo);
      for (std::size_t o = 0; o < n_o; ++o) {
        fill[o] = (1.0 - w) * p_lo[o] + w * p_hi[o];
      }
    } else if (lo >= 0) {
      fill = shifted(normalized(counts.row(lo)), static_cast<int>(h) - lo);
    } else if (hi >= 0) {
      fill = shifted(normalized(counts.row(hi)), static_cast<int>(h) - hi);
    }
    for (std::size_t o = h; o < n_o; ++o) fill[o] += kInterpolationSmoothing;
    fill = normalized(fill);
    for (std::size_t o = 0; o < n_o; ++o) counts.at(h, o) = fill[o];
  }
}

void accumulate(Matrix& counts, const DistanceTable& table,
                const std::vector<std::int16_t>& h_values, std::uint32_t r) {
  counts.at(static_cast<std::size_t>(h_values[r]),
            table.distance_at_rank(r)) += 1.0;
}

}  // namespace

std::string Provenance::to_string() const {
  if (kind == Kind::Full) return "full";
  return "sampled:" + std::to_string(n_random) + ":" + std::to_string(n_nearest);
}

Provenance Provenance::parse(const std::string& text) {
  if (text == "full") return full();
  if (text.rfind("sampled:", 0) == 0) {
    const auto rest = text.substr(8);
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
      return sampled(static_cast<std::uint32_t>(std::stoul(rest.substr(0, colon))),
                     static_cast<std::uint32_t>(std::stoul(rest.substr(colon + 1))));
    }
  }
  throw std::invalid_argument("bad provenance: " + text);
}

const char* to_string(HeuristicVariant v) {
  switch (v) {
    case HeuristicVariant::Plain: return "plain";
    case HeuristicVariant::AllBeaconsRemoved: return "nobeacons";
    case HeuristicVariant::GoalOnlyBeacon: return "goalonly";
  }
  return "?";
}

HeuristicVariant parse_variant(const std::string& text) {
  if (text == "plain") return HeuristicVariant::Plain;
  if (text == "nobeacons") return HeuristicVariant::AllBeaconsRemoved;
  if (text == "goalonly") return HeuristicVariant::GoalOnlyBeacon;
  throw std::invalid_argument("bad variant: " + text);
}

JointCountTable calibrate_full(const DistanceTable& table, const HeuristicFn& h,
                               HeuristicVariant variant) {
  const auto h_values = evaluate_all(table, h);
  Matrix counts(static_cast<std::size_t>(max_value(h_values)) + 1,
                static_cast<std::size_t>(table.max_distance()) + 1);
  for (std::uint32_t r = 0; r < kPermutationCount; ++r) {
    if (h_values[r] >= 0) accumulate(counts, table, h_values, r);
  }
  return {std::move(counts), Provenance::full(), 0, variant};
}

JointCountTable calibrate_sampled(const DistanceTable& table,
                                  const HeuristicFn& h, std::uint32_t n_random,
                                  std::uint32_t n_nearest, std::uint64_t seed,
                                  HeuristicVariant variant) {
  if (n_random + n_nearest < 1) {
    throw std::invalid_argument("sampled calibration needs at least one state");
  }
  // Dimensions come from the full value range of the heuristic so sampled
  // models stay exchangeable with full ones.
  const auto h_values = evaluate_all(table, h);
  Matrix counts(static_cast<std::size_t>(max_value(h_values)) + 1,
                static_cast<std::size_t>(table.max_distance()) + 1);

  auto ranks = reachable_ranks(table);

  // Uniform without replacement: partial Fisher-Yates over the rank list.
  Rng rng(mix_seed({seed, 0x9a11b3u}));
  const std::uint32_t n_draw =
      std::min<std::uint32_t>(n_random, static_cast<std::uint32_t>(ranks.size()));
  for (std::uint32_t i = 0; i < n_draw; ++i) {
    const std::uint64_t j = i + rng.below(ranks.size() - i);
    std::swap(ranks[i], ranks[j]);
    accumulate(counts, table, h_values, ranks[i]);
  }

  // The n_nearest states of smallest exact distance, ties by rank: ascending
  // rank scans per distance level preserve rank order within each level.
  std::uint32_t taken = 0;
  for (int d = 0; d <= table.max_distance() && taken < n_nearest; ++d) {
    for (std::uint32_t r = 0; r < kPermutationCount && taken < n_nearest; ++r) {
      if (table.distance_at_rank(r) == d) {
        accumulate(counts, table, h_values, r);
        ++taken;
      }
    }
  }

  fill_missing_rows(counts);
  return {std::move(counts), Provenance::sampled(n_random, n_nearest), seed,
          variant};
}

PheModel PheModel::from_counts(const JointCountTable& table) {
  const Matrix& c = table.counts;
  PheModel model;
  model.likelihood_ = Matrix(c.rows(), c.cols());
  model.posterior_ = Matrix(c.rows(), c.cols());
  for (std::size_t o = 0; o < c.cols(); ++o) {
    const double sum = c.col_sum(o);
    if (sum <= 0.0) continue;
    for (std::size_t h = 0; h < c.rows(); ++h) {
      model.likelihood_.at(h, o) = c.at(h, o) / sum;
    }
  }
  for (std::size_t h = 0; h < c.rows(); ++h) {
    const double sum = c.row_sum(h);
    if (sum <= 0.0) continue;
    for (std::size_t o = 0; o < c.cols(); ++o) {
      model.posterior_.at(h, o) = c.at(h, o) / sum;
    }
  }
  return model;
}

PheModel PheModel::from_likelihood(Matrix likelihood) {
  PheModel model;
  model.posterior_ = Matrix(likelihood.rows(), likelihood.cols());
  for (std::size_t h = 0; h < likelihood.rows(); ++h) {
    const double sum = likelihood.row_sum(h);
    if (sum <= 0.0) continue;
    for (std::size_t o = 0; o < likelihood.cols(); ++o) {
      model.posterior_.at(h, o) = likelihood.at(h, o) / sum;
    }
  }
  model.likelihood_ = std::move(likelihood);
  return model;
}

PheModel PheModel::delta(std::size_t n_values) {
  Matrix eye(n_values, n_values);
  for (std::size_t i = 0; i < n_values; ++i) eye.at(i, i) = 1.0;
  return from_likelihood(std::move(eye));
}

std::vector<double> PheModel::evidence(int h) const {
  if (h < 0 || h >= static_cast<int>(likelihood_.rows())) {
    throw std::out_of_range("heuristic value outside the calibrated range: " +
                            std::to_string(h));
  }
  return likelihood_.row(static_cast<std::size_t>(h));
}

std::vector<PuzzleState> find_beacons(const DistanceTable& table,
                                      const HeuristicFn& h, int threshold) {
  std::vector<PuzzleState> beacons;
  for (std::uint32_t r = 0; r < kPermutationCount; ++r) {
    if (table.distance_at_rank(r) == kUnreachable) continue;
    const PuzzleState s = unrank(r);
    if (h(s) <= threshold) beacons.push_back(s);
  }
  return beacons;
}

HeuristicFn mask_beacons(HeuristicFn base, HeuristicVariant variant,
                         const std::vector<PuzzleState>& beacons,
                         const GoalSpec& goal) {
  if (variant == HeuristicVariant::Plain) return base;
  std::vector<std::uint32_t> masked;
  masked.reserve(beacons.size());
  const std::uint32_t goal_rank = rank(goal.state());
  for (const auto& b : beacons) {
    const std::uint32_t r = rank(b);
    if (variant == HeuristicVariant::GoalOnlyBeacon && r == goal_rank) continue;
    masked.push_back(r);
  }
  std::sort(masked.begin(), masked.end());
  return [base = std::move(base), masked = std::move(masked)](const PuzzleState& s) {
    if (std::binary_search(masked.begin(), masked.end(), rank(s))) {
      return kBeaconReplacementValue;
    }
    return base(s);
  };
}

TransitionMatrix TransitionMatrix::calibrate(const DistanceTable& table) {
  const std::size_t n = static_cast<std::size_t>(table.max_distance()) + 1;
  Matrix counts(n, n);
  for (std::uint32_t r = 0; r < kPermutationCount; ++r) {
    const std::uint8_t d = table.distance_at_rank(r);
    if (d == kUnreachable) continue;
    for (const auto& [move, neighbor] : neighbors(unrank(r))) {
      counts.at(d, static_cast<std::size_t>(table.exact_distance(neighbor))) += 1.0;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double sum = counts.row_sum(i);
    if (sum <= 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) counts.at(i, j) /= sum;
  }
  return TransitionMatrix(std::move(counts));
}

TransitionMatrix TransitionMatrix::uniform_steps(std::size_t n_outcomes) {
  Matrix p(n_outcomes, n_outcomes);
  for (std::size_t i = 0; i < n_outcomes; ++i) {
    const bool has_down = i > 0;
    const bool has_up = i + 1 < n_outcomes;
    const double share = (has_down && has_up) ? 0.5 : 1.0;
    if (has_down) p.at(i, i - 1) = share;
    if (has_up) p.at(i, i + 1) = share;
  }
  return TransitionMatrix(std::move(p));
}

TransitionMatrix TransitionMatrix::from_matrix(Matrix p) {
  if (p.rows() != p.cols()) {
    throw std::invalid_argument("transition matrix must be square");
  }
  return TransitionMatrix(std::move(p));
}

std::vector<double> TransitionMatrix::propagate_rootward(
    const std::vector<double>& child_msg) const {
  std::vector<double> out(p_.rows(), 0.0);
  for (std::size_t i = 0; i < p_.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < p_.cols(); ++j) acc += p_.at(i, j) * child_msg[j];
    out[i] = acc;
  }
  return out;
}

std::vector<double> TransitionMatrix::propagate_leafward(
    const std::vector<double>& parent_msg) const {
  std::vector<double> out(p_.cols(), 0.0);
  for (std::size_t i = 0; i < p_.rows(); ++i) {
    const double w = parent_msg[i];
    if (w == 0.0) continue;
    for (std::size_t j = 0; j < p_.cols(); ++j) out[j] += w * p_.at(i, j);
  }
  return out;
}

void write_matrix_text(std::ostream& out, const std::string& kind,
                       const Matrix& m, const std::string& variant,
                       const std::string& provenance, std::uint64_t seed) {
  out << kind << ' ' << m.rows() << ' ' << m.cols() << ' ' << variant << ' '
      << provenance << ' ' << seed << '\n';
  char buf[32];
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", m.at(r, c));
      if (c > 0) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

Matrix read_matrix_text(std::istream& in, const std::string& expected_kind,
                        std::string* variant, std::string* provenance,
                        std::uint64_t* seed) {
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("empty model file");
  std::istringstream hs(header);
  std::string kind, var, prov;
  std::size_t rows = 0, cols = 0;
  std::uint64_t sd = 0;
  if (!(hs >> kind >> rows >> cols >> var >> prov >> sd) || kind != expected_kind) {
    throw std::runtime_error("bad model header, expected '" + expected_kind +
                             "': " + header);
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!(in >> m.at(r, c))) {
        throw std::runtime_error("truncated model file at row " +
                                 std::to_string(r));
      }
    }
  }
  if (variant) *variant = var;
  if (provenance) *provenance = prov;
  if (seed) *seed = sd;
  return m;
}

void save_counts(const JointCountTable& counts, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_matrix_text(out, "phe-counts", counts.counts,
                    to_string(counts.variant), counts.provenance.to_string(),
                    counts.seed);
  if (!out) throw std::runtime_error("write failed: " + path);
}

JointCountTable load_counts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string variant, provenance;
  std::uint64_t seed = 0;
  Matrix m = read_matrix_text(in, "phe-counts", &variant, &provenance, &seed);
  return {std::move(m), Provenance::parse(provenance), seed,
          parse_variant(variant)};
}

void save_transition(const TransitionMatrix& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_matrix_text(out, "transition", t.p(), "-", "empirical", 0);
  if (!out) throw std::runtime_error("write failed: " + path);
}

TransitionMatrix load_transition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return TransitionMatrix::from_matrix(
      read_matrix_text(in, "transition", nullptr, nullptr, nullptr));
}

}  // namespace bps
