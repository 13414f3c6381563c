#include "wavseg/harness.hpp"
#include "wavseg/multiscale.hpp"
#include "wavseg/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

namespace wavseg {

int ReplicationReport::exact_count_hits() const {
  auto it = count_histogram.find(static_cast<int>(true_breakpoints.size()));
  return it == count_histogram.end() ? 0 : it->second;
}

bool operator==(const ReplicationReport& a, const ReplicationReport& b) {
  if (a.outcomes.size() != b.outcomes.size()) return false;
  for (std::size_t k = 0; k < a.outcomes.size(); ++k) {
    if (a.outcomes[k].breakpoints != b.outcomes[k].breakpoints ||
        a.outcomes[k].i_star_final != b.outcomes[k].i_star_final) {
      return false;
    }
  }
  return a.model == b.model && a.length == b.length && a.reps == b.reps && a.seed == b.seed &&
         a.true_breakpoints == b.true_breakpoints && a.count_histogram == b.count_histogram &&
         a.i_star_histogram == b.i_star_histogram && a.location_errors == b.location_errors;
}

ReplicationReport run_replications(const PiecewiseModelSpec& spec, int reps, const SegmentationSettings& settings,
                                   std::uint64_t seed, unsigned threads) {
  if (reps < 1) throw std::invalid_argument("run_replications: reps must be at least 1");
  const SegmentationParams params(spec.length(), settings);

  ReplicationReport report;
  report.model = spec.name();
  report.length = spec.length();
  report.reps = reps;
  report.seed = seed;
  report.true_breakpoints = spec.breakpoints();
  report.outcomes.resize(static_cast<std::size_t>(reps));

  parallel_for(report.outcomes.size(), threads, [&](std::size_t r) {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(derive_seed(seed, r));
    const auto series = generate(spec, rng);
    const auto result = segment_lsw_detailed(series, params);
    auto& outcome = report.outcomes[r];
    outcome.breakpoints = result.breakpoints.indices();
    outcome.i_star_final = result.i_star_final;
    outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });

  const auto& truth = report.true_breakpoints;
  report.location_errors.resize(truth.size());
  for (const auto& outcome : report.outcomes) {
    ++report.count_histogram[static_cast<int>(outcome.breakpoints.size())];
    ++report.i_star_histogram[outcome.i_star_final];
    report.runtime.total_seconds += outcome.seconds;
    report.runtime.max_seconds = std::max(report.runtime.max_seconds, outcome.seconds);
    if (outcome.breakpoints.size() != truth.size()) continue;
    for (std::size_t p = 0; p < truth.size(); ++p) {
      const auto nearest = std::min_element(
          outcome.breakpoints.begin(), outcome.breakpoints.end(),
          [&](Index a, Index b) { return std::abs(a - truth[p]) < std::abs(b - truth[p]); });
      report.location_errors[p].push_back(*nearest - truth[p]);
    }
  }
  report.runtime.mean_seconds = report.runtime.total_seconds / reps;
  return report;
}

ReplicationReport run_replications(const std::string& model_name, int reps, const SegmentationSettings& settings,
                                   std::uint64_t seed, unsigned threads, double model_a) {
  auto report = run_replications(model_preset(model_name, model_a), reps, settings, seed, threads);
  if (model_name == "A") {
    std::ostringstream label;
    label << "A(a=" << model_a << ")";
    report.model = label.str();
  }
  return report;
}

SummaryTable summarize(const std::vector<ReplicationReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("summarize: no reports");
  int max_count = 0;
  for (const auto& report : reports) {
    if (!report.count_histogram.empty()) max_count = std::max(max_count, report.count_histogram.rbegin()->first);
  }
  const auto cell = [](const ReplicationReport& report, int count) {
    auto it = report.count_histogram.find(count);
    return it == report.count_histogram.end() ? 0 : it->second;
  };

  std::size_t width = 8;
  for (const auto& report : reports) width = std::max(width, report.model.size() + 2);

  std::ostringstream text;
  std::ostringstream csv;
  text << std::setw(8) << "count";
  csv << "count";
  for (const auto& report : reports) {
    text << std::setw(static_cast<int>(width)) << report.model;
    csv << ',' << report.model;
  }
  text << '\n';
  csv << '\n';
  for (int count = 0; count <= max_count; ++count) {
    text << std::setw(8) << count;
    csv << count;
    for (const auto& report : reports) {
      text << std::setw(static_cast<int>(width)) << cell(report, count);
      csv << ',' << cell(report, count);
    }
    text << '\n';
    csv << '\n';
  }
  text << std::setw(8) << "total";
  csv << "total";
  for (const auto& report : reports) {
    text << std::setw(static_cast<int>(width)) << report.reps;
    csv << ',' << report.reps;
  }
  text << '\n';
  csv << '\n';
  return {text.str(), csv.str()};
}

}  // namespace wavseg
