#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bps/oracle.hpp"
#include "bps/phe.hpp"
#include "bps/policies.hpp"

namespace bps {

enum class PolicyId { Bps, Minimin, Random };

const char* to_string(PolicyId p);
PolicyId parse_policy(const std::string& text);

struct ExperimentConfig {
  PolicyId policy = PolicyId::Minimin;
  HeuristicVariant variant = HeuristicVariant::Plain;
  // CSV provenance tag: "full", "sampled:R:N", or "none" for policies that
  // use no calibrated model.
  std::string phe_mode = "none";
  std::vector<int> horizons;
  std::uint32_t instances_per_horizon = 100;
  std::uint64_t master_seed = 0;
  int workers = 1;
  // Restrict the prior to outcomes >= horizon, mirroring instance
  // eligibility. Off by default.
  bool condition_prior_on_horizon = false;
  bool prune_parent_reversal = true;
  TieBreak tie_break = TieBreak::FirstInOrder;
};

struct QualityRecord {
  std::string policy;
  std::string variant;
  std::string phe_mode;
  int horizon = 0;
  std::uint32_t n = 0;
  std::uint32_t n_toward = 0;
  double quality = 0.0;
  double std_error = 0.0;
  double mean_nodes = 0.0;

  bool operator==(const QualityRecord&) const = default;
};

struct ExperimentResult {
  std::vector<QualityRecord> records;
  std::uint32_t n_errors = 0;
};

// Models a run needs; table is always required, phe/trans only for the
// belief-based policy.
struct ExperimentModels {
  const DistanceTable* table = nullptr;
  HeuristicFn heuristic;
  const PheModel* phe = nullptr;
  const TransitionMatrix* trans = nullptr;
};

// Ranks of reachable states with exact distance >= horizon, ascending.
std::vector<std::uint32_t> eligible_ranks(const DistanceTable& table,
                                          int horizon);

// n states drawn uniformly with replacement from the eligible set.
// Throws std::runtime_error when no state is that far from the goal.
std::vector<PuzzleState> sample_eligible(const DistanceTable& table,
                                         int horizon, std::uint32_t n,
                                         std::uint64_t seed);

// One record per horizon. Roots and per-instance random streams are seeded
// by (master seed, horizon, instance index), so any worker count produces
// identical results. Per-instance failures are counted, not fatal.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const ExperimentModels& models);

// header: policy,variant,phe_mode,horizon,n,n_toward,quality,stderr,mean_nodes
void emit_csv(const std::vector<QualityRecord>& records, std::ostream& out);
void emit_csv(const std::vector<QualityRecord>& records,
              const std::string& path);
std::string csv_string(const std::vector<QualityRecord>& records);
std::vector<QualityRecord> parse_csv(std::istream& in);

}  // namespace bps
