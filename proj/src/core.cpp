#include "wavseg/core.hpp"
#include "wavseg/log.hpp"
#include "wavseg/params.hpp"

#include <algorithm>
#include <iostream>
#include <mutex>

namespace wavseg {

BreakpointSet::BreakpointSet(Index length, std::vector<Breakpoint> breakpoints)
    : length_(length), breakpoints_(std::move(breakpoints)) {
  if (length_ < 2) throw std::invalid_argument("BreakpointSet: series length must be at least 2");
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    const Index at = breakpoints_[k].index;
    if (at < 1 || at > length_ - 2) {
      throw std::invalid_argument("BreakpointSet: index " + std::to_string(at) +
                                  " outside [1, " + std::to_string(length_ - 2) + "]");
    }
    if (k > 0 && breakpoints_[k - 1].index >= at) {
      throw std::invalid_argument("BreakpointSet: indices must be strictly increasing");
    }
  }
}

BreakpointSet BreakpointSet::sorted(Index length, std::vector<Breakpoint> breakpoints) {
  std::stable_sort(breakpoints.begin(), breakpoints.end(),
                   [](const Breakpoint& a, const Breakpoint& b) { return a.index < b.index; });
  auto last = std::unique(breakpoints.begin(), breakpoints.end(),
                          [](const Breakpoint& a, const Breakpoint& b) { return a.index == b.index; });
  breakpoints.erase(last, breakpoints.end());
  return BreakpointSet(length, std::move(breakpoints));
}

std::vector<Index> BreakpointSet::indices() const {
  std::vector<Index> out;
  out.reserve(breakpoints_.size());
  for (const auto& bp : breakpoints_) out.push_back(bp.index);
  return out;
}

Index default_delta(Index length) {
  return std::max<Index>(2, static_cast<Index>(std::floor(std::sqrt(static_cast<double>(length)))));
}

// floor(sqrt(T) ln T / 2): the grouping radius at the boundary exponent, capped at T/8.
Index default_lambda(Index length) {
  const double t = static_cast<double>(length);
  const auto radius = static_cast<Index>(std::floor(std::sqrt(t) * std::log(t) / 2.0));
  return std::max<Index>(1, std::min(radius, length / 8));
}

int default_i_star_initial(Index length) { return std::max(1, floor_log2(length) / 3); }
int default_i_star_max(Index length) { return std::max(default_i_star_initial(length), floor_log2(length) / 2); }

SegmentationParams::SegmentationParams(Index length, const SegmentationSettings& s)
    : length_(length),
      theta_(s.theta),
      delta_T_(s.delta_T.value_or(default_delta(length))),
      balance_c_(s.balance_c),
      lambda_T_(s.lambda_T.value_or(default_lambda(length))),
      i_star_initial_(s.i_star_initial.value_or(default_i_star_initial(length))),
      i_star_max_(s.i_star_max.value_or(default_i_star_max(length))),
      boundary_(s.boundary),
      stop_rule_(s.stop_rule) {
  if (length_ < 2) throw std::invalid_argument("SegmentationParams: length must be at least 2");
  if (!(theta_ > 0.25 && theta_ < 0.5)) {
    throw std::invalid_argument("SegmentationParams: theta must lie in (0.25, 0.5)");
  }
  if (delta_T_ < 2) throw std::invalid_argument("SegmentationParams: delta_T must be at least 2");
  if (!(balance_c_ >= 1.0) || !std::isfinite(balance_c_)) {
    throw std::invalid_argument("SegmentationParams: balance constant must be finite and >= 1");
  }
  if (lambda_T_ < 1) throw std::invalid_argument("SegmentationParams: lambda_T must be at least 1");
  if (i_star_initial_ < 1 || i_star_initial_ > i_star_max_) {
    throw std::invalid_argument("SegmentationParams: need 1 <= i_star_initial <= i_star_max");
  }
  if ((Index{1} << i_star_max_) > length_) {
    throw std::invalid_argument("SegmentationParams: i_star_max too coarse for series length");
  }
  taus_ = s.taus ? s.taus->extended_with(default_tau_table(length, -i_star_max_))
                 : default_tau_table(length, -i_star_max_);
  for (int k = 1; k <= i_star_max_; ++k) {
    if (!taus_.contains(-k)) {
      throw std::invalid_argument("SegmentationParams: no threshold for scale " + std::to_string(-k));
    }
  }
}

double SegmentationParams::threshold_scale() const {
  const double t = static_cast<double>(length_);
  return std::pow(t, theta_) * std::sqrt(std::log(t));
}

namespace log {
namespace {
std::mutex sink_mutex;
Sink& current_sink() {
  static Sink sink = [](std::string_view message) { std::cerr << "warning: " << message << '\n'; };
  return sink;
}
}  // namespace

Sink set_warning_sink(Sink sink) {
  std::lock_guard lock(sink_mutex);
  Sink previous = std::move(current_sink());
  current_sink() = std::move(sink);
  return previous;
}

void warn(std::string_view message) {
  std::lock_guard lock(sink_mutex);
  if (current_sink()) current_sink()(message);
}
}  // namespace log

}  // namespace wavseg
