#include "wavseg/multiscale.hpp"
#include "wavseg/binseg.hpp"
#include "wavseg/wavelet.hpp"

#include <algorithm>
#include <numeric>

namespace wavseg {

ScaleResults::ScaleResults(Index length, std::map<int, BreakpointSet> per_scale)
    : length_(length), per_scale_(std::move(per_scale)) {
  int expected = -1;
  // Iterate finest first.
  for (auto it = per_scale_.rbegin(); it != per_scale_.rend(); ++it, --expected) {
    if (it->first != expected) {
      throw std::invalid_argument("ScaleResults: scales must run contiguously from -1");
    }
    if (it->second.length() != length_) {
      throw std::invalid_argument("ScaleResults: breakpoint set length mismatch at scale " +
                                  std::to_string(it->first));
    }
  }
}

ScaleResults ScaleResults::with_scale(const BreakpointSet& coarser) const {
  auto next = per_scale_;
  next.emplace(-(i_star() + 1), coarser);
  return ScaleResults(length_, std::move(next));
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t k) {
    while (parent[k] != k) k = parent[k] = parent[parent[k]];
    return k;
  }
  void join(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<Breakpoint> pooled(const ScaleResults& results) {
  std::vector<Breakpoint> all;
  for (const auto& [scale, set] : results.per_scale()) all.insert(all.end(), set.begin(), set.end());
  std::sort(all.begin(), all.end(), [](const Breakpoint& a, const Breakpoint& b) {
    return a.index != b.index ? a.index < b.index : a.source_scale > b.source_scale;
  });
  return all;
}

}  // namespace

std::vector<BreakpointGroup> group_breakpoints(const ScaleResults& results, Index lambda_T) {
  if (lambda_T < 1) throw std::invalid_argument("group_breakpoints: lambda_T must be at least 1");
  const auto all = pooled(results);
  DisjointSets sets(all.size());
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a + 1; b < all.size() && all[b].index - all[a].index <= lambda_T; ++b) {
      if (all[a].source_scale != all[b].source_scale) sets.join(a, b);
    }
  }
  // Roots are the smallest member position, so groups come out ordered by minimum index.
  std::map<std::size_t, BreakpointGroup> by_root;
  for (std::size_t k = 0; k < all.size(); ++k) by_root[sets.find(k)].push_back(all[k]);
  std::vector<BreakpointGroup> groups;
  groups.reserve(by_root.size());
  for (auto& [root, group] : by_root) groups.push_back(std::move(group));
  return groups;
}

BreakpointSet across_scale_merge(const ScaleResults& results, Index lambda_T) {
  if (lambda_T < 1) throw std::invalid_argument("across_scale_merge: lambda_T must be at least 1");
  const Index length = results.length();

  // Finest scale among those with the most breakpoints.
  int finest_busiest = 0;
  std::size_t most = 0;
  for (const auto& [scale, set] : results.per_scale()) {
    if (set.size() >= most) {
      most = set.size();
      finest_busiest = scale;
    }
  }
  if (most == 0) return BreakpointSet(length, {});

  const auto reference = results.at(finest_busiest).indices();
  const auto covered = [&](Index at) {
    auto it = std::lower_bound(reference.begin(), reference.end(), at);
    if (it != reference.end() && *it - at < lambda_T) return true;
    return it != reference.begin() && at - *std::prev(it) < lambda_T;
  };
  bool all_covered = true;
  for (const auto& [scale, set] : results.per_scale()) {
    if (scale == finest_busiest) continue;
    for (const auto& bp : set) all_covered = all_covered && covered(bp.index);
  }
  if (all_covered) return results.at(finest_busiest);

  std::vector<Breakpoint> representatives;
  for (const auto& group : group_breakpoints(results, lambda_T)) {
    // Members are sorted by index, so the first member at the finest scale has the smallest index.
    const int finest = std::max_element(group.begin(), group.end(), [](const auto& a, const auto& b) {
                         return a.source_scale < b.source_scale;
                       })->source_scale;
    representatives.push_back(
        *std::find_if(group.begin(), group.end(), [&](const auto& bp) { return bp.source_scale == finest; }));
  }
  return BreakpointSet::sorted(length, std::move(representatives));
}

std::vector<double> scale_extension_statistic(const VectorX<double>& row, const BreakpointSet& merged) {
  const Index length = row.size();
  if (merged.length() != length) {
    throw std::invalid_argument("scale_extension_statistic: breakpoint set length mismatch");
  }
  const PartialSums<double> sums(row);
  std::vector<Index> bounds{-1};
  for (const auto& bp : merged) bounds.push_back(bp.index);
  bounds.push_back(length - 1);

  std::vector<double> stats;
  stats.reserve(bounds.size() - 1);
  for (std::size_t p = 1; p < bounds.size(); ++p) {
    const Index s = bounds[p - 1] + 1;
    const Index e = bounds[p];
    const Index n = e - s + 1;
    const double mean = n >= 1 ? sums.sum(s, e) / static_cast<double>(n) : 0.0;
    double best = 0.0;
    if (n >= 2 && mean > 0.0) {
      for (Index nu = s; nu < e; ++nu) {
        const double d = cusum_from_sums(sums.sum(s, nu), sums.sum(nu + 1, e), nu - s + 1, e - nu);
        best = std::max(best, std::abs(d) / mean);
      }
    }
    stats.push_back(best);
  }
  return stats;
}

namespace {

BreakpointSet segment_scale(const VectorX<double>& row, const SegmentationParams& params, int scale) {
  return within_scale_postprocess(row, binary_segment(row, params, scale), params, scale);
}

}  // namespace

LswSegmentation segment_lsw_detailed(const TimeSeriesd& series, const SegmentationParams& params) {
  const Index length = series.size();
  if (length < 16) throw std::invalid_argument("segment_lsw: series must have at least 16 observations");
  if (params.length() != length) {
    throw std::invalid_argument("segment_lsw: parameters were resolved for a different series length");
  }
  const auto stack = wavelet_periodogram(series, params.i_star_max(), params.boundary());
  const auto row = [&](int scale) -> VectorX<double> { return stack.row(scale).transpose(); };

  int i_star = params.i_star_initial();
  std::map<int, BreakpointSet> per_scale;
  for (int k = 1; k <= i_star; ++k) per_scale.emplace(-k, segment_scale(row(-k), params, -k));
  ScaleResults results(length, std::move(per_scale));
  BreakpointSet merged = across_scale_merge(results, params.lambda_T());

  while (i_star < params.i_star_max()) {
    const int next = -(i_star + 1);
    const auto next_row = row(next);
    const double limit = params.tau_detect(next) * params.threshold_scale();
    const auto stats = scale_extension_statistic(next_row, merged);
    if (std::none_of(stats.begin(), stats.end(), [&](double v) { return v > limit; })) break;

    ++i_star;
    results = results.with_scale(segment_scale(next_row, params, next));
    auto remerged = across_scale_merge(results, params.lambda_T());
    const bool changed = remerged.indices() != merged.indices();
    merged = std::move(remerged);
    if (!changed) break;
  }
  return {std::move(merged), i_star, std::move(results)};
}

BreakpointSet segment_lsw(const TimeSeriesd& series, const SegmentationParams& params) {
  return segment_lsw_detailed(series, params).breakpoints;
}

}  // namespace wavseg
