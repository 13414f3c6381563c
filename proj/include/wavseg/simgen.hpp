#pragma once

#include "wavseg/core.hpp"

#include <random>
#include <string>
#include <vector>

namespace wavseg {

/// One stationary ARMA regime:
///   X_t = sum_k ar[k] X_{t-1-k} + eps_t + sum_k ma[k] eps_{t-1-k},
///   eps_t ~ N(0, innovation_sd^2).
struct ArmaSegment {
  Index length = 0;
  std::vector<double> ar;
  std::vector<double> ma;
  double innovation_sd = 1.0;

  friend bool operator==(const ArmaSegment&, const ArmaSegment&) = default;
};

/// Consecutive ARMA regimes. Construction checks positive lengths,
/// nonnegative innovation sd, and a causal AR polynomial per regime.
class PiecewiseModelSpec {
 public:
  explicit PiecewiseModelSpec(std::vector<ArmaSegment> segments, std::string name = "custom");

  const std::vector<ArmaSegment>& segments() const { return segments_; }
  const std::string& name() const { return name_; }
  Index length() const;

  /// 0-based breakpoints: last index of every regime but the final one.
  std::vector<Index> breakpoints() const;

  /// Same regimes with lengths rescaled proportionally to `length`.
  PiecewiseModelSpec rescaled(Index length) const;

  friend bool operator==(const PiecewiseModelSpec&, const PiecewiseModelSpec&) = default;

 private:
  std::vector<ArmaSegment> segments_;
  std::string name_;
};

/// True when every root of 1 - a_1 z - ... - a_p z^p lies outside the unit
/// circle: companion-matrix spectral radius below 1 - tolerance.
bool is_causal(const std::vector<double>& ar, double tolerance = 1e-9);

/// Presets A ... G from the benchmark study at T = 1024. `a` is the AR(1)
/// coefficient of model A and is ignored otherwise.
PiecewiseModelSpec model_preset(const std::string& name, double a = 0.7);

inline constexpr Index kBurnIn = 100;

/// Simulates the piecewise recursion. Lagged values carry across regime
/// boundaries; the first regime runs kBurnIn discarded steps from zero state.
TimeSeriesd generate(const PiecewiseModelSpec& spec, std::mt19937_64& rng);

}  // namespace wavseg
