#pragma once

#include "wavseg/core.hpp"

#include <map>

namespace wavseg {

struct TauPair {
  double detect = 0.0;  // threshold constant for the binary segmentation test
  double post = 0.0;    // threshold constant for within-scale pruning

  friend bool operator==(const TauPair&, const TauPair&) = default;
};

/// Per-scale threshold constants calibrated for a series length.
///
/// Construction rejects non-positive entries and entries with post < detect.
/// Entries that shrink toward coarser scales are accepted with a warning.
class TauTable {
 public:
  TauTable() = default;
  TauTable(Index length, std::map<int, TauPair> per_scale);

  /// The published T = 1024 values for scales -1 ... -4, verbatim.
  static TauTable published();

  Index length() const { return length_; }
  const std::map<int, TauPair>& entries() const { return per_scale_; }
  bool contains(int scale) const { return per_scale_.count(scale) != 0; }
  int coarsest_scale() const;

  /// Throws std::out_of_range for scales without an entry.
  const TauPair& at(int scale) const;

  /// Copy with `other`'s entries added for scales this table lacks.
  TauTable extended_with(const TauTable& other) const;

  friend bool operator==(const TauTable&, const TauTable&) = default;

 private:
  Index length_ = 0;
  std::map<int, TauPair> per_scale_;
};

/// Default table for a series of the given length covering scales down to
/// `coarsest`: the published values for -1 ... -4, extended by frozen
/// Monte-Carlo values for coarser scales. Lengths other than 1024 reuse the
/// same numbers and log a one-time warning.
TauTable default_tau_table(Index length, int coarsest = -8);

}  // namespace wavseg
