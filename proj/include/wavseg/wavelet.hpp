#pragma once

#include "wavseg/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wavseg {

/// Non-decimated Haar filter at a negative scale i: 2^{-i-1} taps of
/// 2^{i/2} followed by 2^{-i-1} taps of -2^{i/2}.
template <typename Scalar = double>
class HaarFilter {
 public:
  explicit HaarFilter(int scale) : scale_(scale) {
    if (!is_valid_scale(scale)) {
      throw std::invalid_argument("haar_filter: scale must be in [-30, -1], got " + std::to_string(scale));
    }
    const Index half = Index{1} << (-scale - 1);
    const Scalar height = std::pow(Scalar(2), Scalar(scale) / Scalar(2));
    taps_.resize(2 * half);
    taps_.head(half).setConstant(height);
    taps_.tail(half).setConstant(-height);
  }

  int scale() const { return scale_; }
  Index size() const { return taps_.size(); }
  const VectorX<Scalar>& taps() const { return taps_; }

 private:
  int scale_;
  VectorX<Scalar> taps_;
};

template <typename Scalar = double>
HaarFilter<Scalar> haar_filter(int scale) {
  return HaarFilter<Scalar>(scale);
}

/// Same as above, additionally rejecting filters longer than `length`.
template <typename Scalar = double>
HaarFilter<Scalar> haar_filter(int scale, Index length) {
  if (is_valid_scale(scale) && (Index{1} << -scale) > length) {
    throw std::invalid_argument("haar_filter: scale " + std::to_string(scale) +
                                " is too coarse for length " + std::to_string(length));
  }
  return HaarFilter<Scalar>(scale);
}

namespace detail {

/// Source position for an index past the end of a length-n series.
inline Index boundary_index(Index t, Index n, Boundary boundary) {
  if (t < n) return t;
  if (boundary == Boundary::periodic) return t % n;
  // Half-sample symmetric: x_{n-1}, x_{n-1}, x_{n-2}, ...
  const Index period = 2 * n;
  const Index r = t % period;
  return r < n ? r : period - 1 - r;
}

/// Runs the Haar a-trous pyramid to `levels` and calls `emit(level, detail)`
/// with the first n detail coefficients of every level.
template <typename Scalar, typename Emit>
void haar_pyramid(const VectorX<Scalar>& x, int levels, Boundary boundary, Emit&& emit) {
  const Index n = x.size();
  const Index reach = Index{1} << levels;
  VectorX<Scalar> smooth(n + reach - 1);
  for (Index t = 0; t < smooth.size(); ++t) smooth[t] = x[boundary_index(t, n, boundary)];

  const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
  VectorX<Scalar> detail_row(n);
  for (int level = 1; level <= levels; ++level) {
    const Index step = Index{1} << (level - 1);
    const Index next_size = smooth.size() - step;
    for (Index t = 0; t < n; ++t) detail_row[t] = (smooth[t] - smooth[t + step]) * inv_sqrt2;
    emit(level, detail_row);
    if (level == levels) break;
    VectorX<Scalar> coarser(next_size);
    for (Index t = 0; t < next_size; ++t) coarser[t] = (smooth[t] + smooth[t + step]) * inv_sqrt2;
    smooth.swap(coarser);
  }
}

}  // namespace detail

/// Non-decimated Haar coefficients at one scale:
///   out[t] = sum_s x_s psi_{scale, s - t},  s = t ... t + 2^{-scale} - 1,
/// with indices past T - 1 resolved by `boundary`.
template <typename Scalar>
VectorX<Scalar> ndwt_coefficients(const TimeSeries<Scalar>& series, int scale,
                                  Boundary boundary = Boundary::reflect) {
  haar_filter<Scalar>(scale, series.size());
  VectorX<Scalar> out;
  detail::haar_pyramid<Scalar>(series.values(), -scale, boundary, [&](int level, const VectorX<Scalar>& d) {
    if (level == -scale) out = d;
  });
  return out;
}

/// Wavelet periodogram at scales -1 ... -i_star: squared NDWT coefficients.
template <typename Scalar>
PeriodogramStack<Scalar> wavelet_periodogram(const TimeSeries<Scalar>& series, int i_star,
                                             Boundary boundary = Boundary::reflect) {
  if (i_star < 1) throw std::invalid_argument("wavelet_periodogram: i_star must be positive");
  haar_filter<Scalar>(-i_star, series.size());
  MatrixX<Scalar> rows(i_star, series.size());
  detail::haar_pyramid<Scalar>(series.values(), i_star, boundary, [&](int level, const VectorX<Scalar>& d) {
    rows.row(level - 1) = d.array().square().matrix().transpose();
  });
  return PeriodogramStack<Scalar>(std::move(rows));
}

/// Single periodogram row, for callers that only need one scale.
template <typename Scalar>
VectorX<Scalar> periodogram_row(const TimeSeries<Scalar>& series, int scale,
                                Boundary boundary = Boundary::reflect) {
  return ndwt_coefficients(series, scale, boundary).array().square().matrix();
}

}  // namespace wavseg
