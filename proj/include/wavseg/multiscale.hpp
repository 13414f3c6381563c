#pragma once

#include "wavseg/core.hpp"
#include "wavseg/params.hpp"

#include <map>
#include <vector>

namespace wavseg {

/// Per-scale breakpoint sets for scales -1 ... -I*, all for one series length.
class ScaleResults {
 public:
  ScaleResults(Index length, std::map<int, BreakpointSet> per_scale);

  Index length() const { return length_; }
  int i_star() const { return static_cast<int>(per_scale_.size()); }
  const std::map<int, BreakpointSet>& per_scale() const { return per_scale_; }
  const BreakpointSet& at(int scale) const { return per_scale_.at(scale); }

  /// Copy with one more (coarser) scale appended.
  ScaleResults with_scale(const BreakpointSet& coarser) const;

 private:
  Index length_;
  std::map<int, BreakpointSet> per_scale_;
};

using BreakpointGroup = std::vector<Breakpoint>;

/// Single-linkage grouping: breakpoints from different scales at most
/// lambda_T apart share a group. Groups are sorted by their smallest index;
/// members within a group are sorted by index, then by scale.
std::vector<BreakpointGroup> group_breakpoints(const ScaleResults& results, Index lambda_T);

/// Combines per-scale sets. Picks the finest scale i0 with the most
/// breakpoints; if every other breakpoint lies within lambda_T (strictly) of
/// a scale-i0 breakpoint, returns scale i0's set, otherwise one
/// representative per group taken from the group's finest scale.
BreakpointSet across_scale_merge(const ScaleResults& results, Index lambda_T);

/// Largest absolute scaled CUSUM ratio on each interval between consecutive
/// merged breakpoints (sentinels -1 and T - 1). Intervals shorter than two
/// samples, or with zero mean, give 0.
std::vector<double> scale_extension_statistic(const VectorX<double>& row, const BreakpointSet& merged);

struct LswSegmentation {
  BreakpointSet breakpoints;
  int i_star_final = 0;
  ScaleResults scales;
};

LswSegmentation segment_lsw_detailed(const TimeSeriesd& series, const SegmentationParams& params);

/// Full pipeline: per-scale segmentation with within-scale pruning, merge
/// across scales, then extend I* while the next coarser scale shows
/// unexplained structure.
BreakpointSet segment_lsw(const TimeSeriesd& series, const SegmentationParams& params);

}  // namespace wavseg
