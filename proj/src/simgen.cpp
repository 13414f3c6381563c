#include "wavseg/simgen.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wavseg {

bool is_causal(const std::vector<double>& ar, double tolerance) {
  const auto p = static_cast<Index>(ar.size());
  if (p == 0) return true;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (Index k = 0; k < p; ++k) companion(0, k) = ar[static_cast<std::size_t>(k)];
  for (Index k = 1; k < p; ++k) companion(k, k - 1) = 1.0;
  const Eigen::VectorXcd roots = companion.eigenvalues();
  return roots.cwiseAbs().maxCoeff() < 1.0 - tolerance;
}

PiecewiseModelSpec::PiecewiseModelSpec(std::vector<ArmaSegment> segments, std::string name)
    : segments_(std::move(segments)), name_(std::move(name)) {
  if (segments_.empty()) throw std::invalid_argument("PiecewiseModelSpec: need at least one segment");
  for (const auto& seg : segments_) {
    if (seg.length < 1) throw std::invalid_argument("PiecewiseModelSpec: segment lengths must be positive");
    if (!(seg.innovation_sd >= 0.0) || !std::isfinite(seg.innovation_sd)) {
      throw std::invalid_argument("PiecewiseModelSpec: innovation sd must be finite and nonnegative");
    }
    if (!is_causal(seg.ar)) throw std::invalid_argument("PiecewiseModelSpec: AR polynomial is not causal");
  }
  if (length() < 2) throw std::invalid_argument("PiecewiseModelSpec: total length must be at least 2");
}

Index PiecewiseModelSpec::length() const {
  return std::accumulate(segments_.begin(), segments_.end(), Index{0},
                         [](Index acc, const ArmaSegment& seg) { return acc + seg.length; });
}

std::vector<Index> PiecewiseModelSpec::breakpoints() const {
  std::vector<Index> out;
  Index end = 0;
  for (std::size_t k = 0; k + 1 < segments_.size(); ++k) {
    end += segments_[k].length;
    out.push_back(end - 1);
  }
  return out;
}

PiecewiseModelSpec PiecewiseModelSpec::rescaled(Index length) const {
  const double factor = static_cast<double>(length) / static_cast<double>(this->length());
  auto segments = segments_;
  Index start = 0;
  Index cumulative = 0;
  for (auto& seg : segments) {
    cumulative += seg.length;
    const auto end = static_cast<Index>(std::llround(static_cast<double>(cumulative) * factor));
    seg.length = end - start;
    start = end;
  }
  return PiecewiseModelSpec(std::move(segments), name_);
}

PiecewiseModelSpec model_preset(const std::string& name, double a) {
  using S = ArmaSegment;
  if (name == "A") return PiecewiseModelSpec({S{1024, {a}, {}, 1.0}}, "A");
  if (name == "B") {
    return PiecewiseModelSpec({S{512, {0.9}, {}, 1.0}, S{256, {1.68, -0.81}, {}, 1.0}, S{256, {1.32, -0.81}, {}, 1.0}},
                              "B");
  }
  if (name == "C") {
    return PiecewiseModelSpec({S{400, {0.4}, {}, 1.0}, S{212, {-0.6}, {}, 1.0}, S{412, {0.5}, {}, 1.0}}, "C");
  }
  if (name == "D") return PiecewiseModelSpec({S{50, {0.75}, {}, 1.0}, S{974, {-0.5}, {}, 1.0}}, "D");
  if (name == "E") {
    return PiecewiseModelSpec({S{400, {0.999}, {}, 1.0}, S{350, {0.999}, {}, 1.5}, S{274, {0.999}, {}, 1.0}}, "E");
  }
  if (name == "F") {
    // Second lags of the first and last regimes act on X_{t-2}.
    return PiecewiseModelSpec(
        {S{400, {1.399, -0.4}, {}, 0.8}, S{350, {0.999}, {}, 1.2}, S{274, {0.699, 0.3}, {}, 1.0}}, "F");
  }
  if (name == "G") {
    return PiecewiseModelSpec({S{125, {0.7}, {0.6}, 1.0},
                               S{407, {0.3}, {0.3}, 1.0},
                               S{172, {0.9}, {}, 1.0},
                               S{320, {0.1}, {-0.5}, 1.0}},
                              "G");
  }
  throw std::invalid_argument("model_preset: unknown model '" + name + "' (expected A-G)");
}

TimeSeriesd generate(const PiecewiseModelSpec& spec, std::mt19937_64& rng) {
  std::size_t max_lag = 1;
  for (const auto& seg : spec.segments()) max_lag = std::max({max_lag, seg.ar.size(), seg.ma.size()});

  std::normal_distribution<double> normal(0.0, 1.0);
  // Most recent value first.
  std::vector<double> x_lags(max_lag, 0.0);
  std::vector<double> eps_lags(max_lag, 0.0);
  auto step = [&](const ArmaSegment& seg) {
    const double eps = seg.innovation_sd * normal(rng);
    double x = eps;
    for (std::size_t k = 0; k < seg.ar.size(); ++k) x += seg.ar[k] * x_lags[k];
    for (std::size_t k = 0; k < seg.ma.size(); ++k) x += seg.ma[k] * eps_lags[k];
    std::rotate(x_lags.rbegin(), x_lags.rbegin() + 1, x_lags.rend());
    std::rotate(eps_lags.rbegin(), eps_lags.rbegin() + 1, eps_lags.rend());
    x_lags[0] = x;
    eps_lags[0] = eps;
    return x;
  };

  for (Index k = 0; k < kBurnIn; ++k) step(spec.segments().front());
  VectorX<double> out(spec.length());
  Index t = 0;
  for (const auto& seg : spec.segments()) {
    for (Index k = 0; k < seg.length; ++k) out[t++] = step(seg);
  }
  return TimeSeriesd(std::move(out));
}

}  // namespace wavseg
