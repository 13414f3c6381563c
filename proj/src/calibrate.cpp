#include "wavseg/calibrate.hpp"
#include "wavseg/binseg.hpp"
#include "wavseg/log.hpp"
#include "wavseg/parallel.hpp"
#include "wavseg/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace wavseg {

VectorX<double> correlated_gaussian(Index length, double rho, std::mt19937_64& rng) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("correlated_gaussian: rho must be in [0, 1)");
  std::normal_distribution<double> normal(0.0, 1.0);
  const double innovation = std::sqrt(1.0 - rho * rho);
  VectorX<double> x(length);
  x[0] = normal(rng);
  for (Index t = 1; t < length; ++t) x[t] = rho * x[t - 1] + innovation * normal(rng);
  return x;
}

double null_ratio(const VectorX<double>& row, double theta) {
  const Index length = row.size();
  if (length < 3) throw std::invalid_argument("null_ratio: need at least three positions");
  const PartialSums<double> sums(row);
  const double mean = sums.sum(0, length - 1) / static_cast<double>(length);
  if (!(mean > 0.0)) return 0.0;
  double largest = 0.0;
  for (Index b = 1; b < length - 1; ++b) {
    const double d = cusum_from_sums(sums.sum(0, b), sums.sum(b + 1, length - 1), b + 1, length - 1 - b);
    largest = std::max(largest, std::abs(d));
  }
  const double t = static_cast<double>(length);
  return largest / (mean * std::pow(t, theta) * std::sqrt(std::log(t)));
}

std::vector<double> null_statistics(Index length, double rho, int scales, double theta, std::mt19937_64& rng,
                                    Boundary boundary) {
  const TimeSeriesd series(correlated_gaussian(length, rho, rng));
  const auto stack = wavelet_periodogram(series, scales, boundary);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(scales));
  for (int k = 1; k <= scales; ++k) out.push_back(null_ratio(stack.row(-k).transpose(), theta));
  return out;
}

double null_statistic(Index length, double rho, int scale, double theta, std::mt19937_64& rng, Boundary boundary) {
  haar_filter(scale, length);
  const TimeSeriesd series(correlated_gaussian(length, rho, rng));
  return null_ratio(periodogram_row(series, scale, boundary), theta);
}

double nearest_rank_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("nearest_rank_quantile: no values");
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("nearest_rank_quantile: q must be in (0, 1]");
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  const auto nth = values.begin() + static_cast<std::ptrdiff_t>(std::max<std::size_t>(rank, 1) - 1);
  std::nth_element(values.begin(), nth, values.end());
  return *nth;
}

double bootstrap_quantile_se(const std::vector<double>& values, double q, int resamples, std::uint64_t seed) {
  if (resamples < 2) throw std::invalid_argument("bootstrap_quantile_se: need at least two resamples");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  std::vector<double> estimates;
  std::vector<double> resample(values.size());
  for (int r = 0; r < resamples; ++r) {
    for (auto& v : resample) v = values[pick(rng)];
    estimates.push_back(nearest_rank_quantile(resample, q));
  }
  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= static_cast<double>(resamples);
  double ss = 0.0;
  for (double e : estimates) ss += (e - mean) * (e - mean);
  return std::sqrt(ss / static_cast<double>(resamples - 1));
}

std::vector<std::vector<double>> calibration_draws(const CalibrationOptions& options) {
  if (options.reps_per_combo < 100) throw std::invalid_argument("calibrate_tau: reps_per_combo must be at least 100");
  if (options.scales < 1) throw std::invalid_argument("calibrate_tau: need at least one scale");
  haar_filter(-options.scales, options.length);

  const std::size_t levels = std::size(kCalibrationRhos);
  const auto reps = static_cast<std::size_t>(options.reps_per_combo);
  const std::size_t total = levels * reps;
  std::vector<std::vector<double>> by_draw(total);
  parallel_for(total, options.threads, [&](std::size_t k) {
    // Seeded per (level, replicate) so a run with more reps extends a smaller one.
    const std::size_t level = k / reps;
    std::mt19937_64 rng(derive_seed(derive_seed(options.seed, level), k % reps));
    by_draw[k] = null_statistics(options.length, kCalibrationRhos[level], options.scales, options.theta, rng,
                                 options.boundary);
  });

  std::vector<std::vector<double>> per_scale(static_cast<std::size_t>(options.scales));
  for (auto& column : per_scale) column.reserve(total);
  for (const auto& draw : by_draw) {
    for (std::size_t s = 0; s < draw.size(); ++s) per_scale[s].push_back(draw[s]);
  }
  return per_scale;
}

TauTable calibrate_tau(const CalibrationOptions& options) {
  const auto draws = calibration_draws(options);
  if (draws.front().size() < 1000) {
    log::warn("calibrate_tau: only " + std::to_string(draws.front().size()) +
              " pooled draws per scale; quantiles will be imprecise");
  }
  std::map<int, TauPair> entries;
  for (std::size_t s = 0; s < draws.size(); ++s) {
    entries.emplace(-static_cast<int>(s) - 1,
                    TauPair{nearest_rank_quantile(draws[s], 0.95), nearest_rank_quantile(draws[s], 0.975)});
  }
  return TauTable(options.length, std::move(entries));
}

}  // namespace wavseg
