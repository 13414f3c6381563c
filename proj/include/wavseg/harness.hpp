#pragma once

#include "wavseg/core.hpp"
#include "wavseg/params.hpp"
#include "wavseg/simgen.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wavseg {

struct ReplicateOutcome {
  std::vector<Index> breakpoints;
  int i_star_final = 0;
  double seconds = 0.0;
};

struct RuntimeStats {
  double mean_seconds = 0.0;
  double max_seconds = 0.0;
  double total_seconds = 0.0;
};

/// Outcome of running the full pipeline over simulated replicates of a model.
struct ReplicationReport {
  std::string model;
  Index length = 0;
  int reps = 0;
  std::uint64_t seed = 0;
  std::vector<Index> true_breakpoints;
  std::map<int, int> count_histogram;  // number detected -> replicates
  std::map<int, int> i_star_histogram;  // final I* -> replicates
  // For replicates detecting exactly as many breakpoints as the truth:
  // detected minus true location, one list per true breakpoint, where the
  // detected location is the one nearest to that true breakpoint.
  std::vector<std::vector<Index>> location_errors;
  std::vector<ReplicateOutcome> outcomes;
  RuntimeStats runtime;  // wall-clock, excluded from equality

  int exact_count_hits() const;
  friend bool operator==(const ReplicationReport& a, const ReplicationReport& b);
};

/// Simulates `reps` series from `spec` (replicate r seeded with
/// derive_seed(seed, r)), segments each, and aggregates.
ReplicationReport run_replications(const PiecewiseModelSpec& spec, int reps, const SegmentationSettings& settings,
                                   std::uint64_t seed, unsigned threads = 1);

ReplicationReport run_replications(const std::string& model_name, int reps, const SegmentationSettings& settings,
                                   std::uint64_t seed, unsigned threads = 1, double model_a = 0.7);

struct SummaryTable {
  std::string text;
  std::string csv;
};

/// Count table with one column per report and rows 0 ... max count.
SummaryTable summarize(const std::vector<ReplicationReport>& reports);

}  // namespace wavseg
