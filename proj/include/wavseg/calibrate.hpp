#pragma once

#include "wavseg/core.hpp"
#include "wavseg/tau_table.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace wavseg {

/// Correlation levels mixed with equal weight during calibration.
inline constexpr double kCalibrationRhos[] = {0.0, 0.3, 0.6, 0.9};

/// Gaussian vector with cov(X_i, X_j) = rho^|i - j|, built as a stationary AR(1).
VectorX<double> correlated_gaussian(Index length, double rho, std::mt19937_64& rng);

/// Null ratio U for one periodogram row: the largest |CUSUM| over interior
/// splits divided by mean(row) * T^theta * sqrt(ln T). Zero for an all-zero row.
double null_ratio(const VectorX<double>& row, double theta);

/// U for one draw of the correlated Gaussian null at a single scale.
double null_statistic(Index length, double rho, int scale, double theta, std::mt19937_64& rng,
                      Boundary boundary = Boundary::reflect);

/// U at scales -1 ... -scales from one shared null draw.
std::vector<double> null_statistics(Index length, double rho, int scales, double theta, std::mt19937_64& rng,
                                    Boundary boundary = Boundary::reflect);

/// Nearest-rank empirical quantile: the ceil(q N)-th smallest value.
double nearest_rank_quantile(std::vector<double> values, double q);

/// Bootstrap standard error of the nearest-rank q-quantile.
double bootstrap_quantile_se(const std::vector<double>& values, double q, int resamples, std::uint64_t seed);

struct CalibrationOptions {
  Index length = 1024;
  int scales = 4;               // calibrate -1 ... -scales
  int reps_per_combo = 250;     // draws per correlation level, at least 100
  double theta = 0.251;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  Boundary boundary = Boundary::reflect;
};

/// Draws pooled per scale, len(kCalibrationRhos) * reps_per_combo each,
/// grouped by correlation level. Deterministic for a seed regardless of
/// thread count, and the first n draws of each level do not depend on
/// reps_per_combo.
std::vector<std::vector<double>> calibration_draws(const CalibrationOptions& options);

/// tau_detect = 95% and tau_post = 97.5% nearest-rank quantiles of the pooled
/// null ratios at each scale.
TauTable calibrate_tau(const CalibrationOptions& options);

}  // namespace wavseg
