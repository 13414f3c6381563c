#pragma once

#include <Eigen/Core>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavseg {

using Index = Eigen::Index;

/// How the non-decimated transform reads past the end of the series.
enum class Boundary { periodic, reflect };

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Raw observations X_0 ... X_{T-1}. Length at least two, every value finite.
template <typename Scalar = double>
class TimeSeries {
 public:
  explicit TimeSeries(VectorX<Scalar> values) : values_(std::move(values)) {
    if (values_.size() < 2) {
      throw std::invalid_argument("TimeSeries: length must be at least 2");
    }
    if (!values_.allFinite()) {
      throw std::invalid_argument("TimeSeries: values must be finite");
    }
  }

  TimeSeries(std::initializer_list<Scalar> values)
      : TimeSeries(VectorX<Scalar>(Eigen::Map<const VectorX<Scalar>>(
            values.begin(), static_cast<Index>(values.size())))) {}

  static TimeSeries from(const std::vector<Scalar>& values) {
    return TimeSeries(VectorX<Scalar>(Eigen::Map<const VectorX<Scalar>>(
        values.data(), static_cast<Index>(values.size()))));
  }

  const VectorX<Scalar>& values() const { return values_; }
  Index size() const { return values_.size(); }
  Scalar operator[](Index t) const { return values_[t]; }

 private:
  VectorX<Scalar> values_;
};

using TimeSeriesd = TimeSeries<double>;

/// Wavelet periodogram rows for scales -1 ... -I*. Row k holds scale -(k+1).
template <typename Scalar = double>
class PeriodogramStack {
 public:
  explicit PeriodogramStack(MatrixX<Scalar> rows) : rows_(std::move(rows)) {
    if (rows_.rows() < 1 || rows_.cols() < 2) {
      throw std::invalid_argument("PeriodogramStack: need at least one scale and two positions");
    }
    if (!rows_.allFinite() || (rows_.array() < Scalar(0)).any()) {
      throw std::invalid_argument("PeriodogramStack: values must be finite and nonnegative");
    }
  }

  int i_star() const { return static_cast<int>(rows_.rows()); }
  Index length() const { return rows_.cols(); }

  std::vector<int> scales() const {
    std::vector<int> out;
    for (int k = 1; k <= i_star(); ++k) out.push_back(-k);
    return out;
  }

  /// Row for a negative scale; -1 is the finest.
  auto row(int scale) const {
    if (scale > -1 || scale < -i_star()) {
      throw std::out_of_range("PeriodogramStack: scale " + std::to_string(scale) + " not present");
    }
    return rows_.row(-scale - 1);
  }

  const MatrixX<Scalar>& data() const { return rows_; }

 private:
  MatrixX<Scalar> rows_;
};

using PeriodogramStackd = PeriodogramStack<double>;

/// A detected change location. `index` is the last position of the left
/// segment, so the split is [.., index] | [index + 1, ..].
struct Breakpoint {
  Index index = 0;
  int source_scale = -1;
  double statistic = 0.0;  // |d| / m at detection

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

class BreakpointSet {
 public:
  BreakpointSet() = default;
  BreakpointSet(Index length, std::vector<Breakpoint> breakpoints);

  /// Builds from unsorted input; duplicates keep the first occurrence.
  static BreakpointSet sorted(Index length, std::vector<Breakpoint> breakpoints);

  Index length() const { return length_; }
  std::size_t size() const { return breakpoints_.size(); }
  bool empty() const { return breakpoints_.empty(); }
  const std::vector<Breakpoint>& items() const { return breakpoints_; }
  auto begin() const { return breakpoints_.begin(); }
  auto end() const { return breakpoints_.end(); }
  const Breakpoint& operator[](std::size_t k) const { return breakpoints_[k]; }

  std::vector<Index> indices() const;

  friend bool operator==(const BreakpointSet&, const BreakpointSet&) = default;

 private:
  Index length_ = 0;
  std::vector<Breakpoint> breakpoints_;
};

inline bool is_valid_scale(int scale) { return scale <= -1 && scale >= -30; }

inline int floor_log2(Index n) {
  int k = 0;
  while ((Index{1} << (k + 1)) <= n) ++k;
  return k;
}

}  // namespace wavseg
