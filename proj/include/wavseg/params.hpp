#pragma once

#include "wavseg/core.hpp"
#include "wavseg/tau_table.hpp"

#include <optional>

namespace wavseg {

/// Which child-length test ends the recursion on a node.
///   max_child: stop when max{b - s + 1, e - b} < delta_T (default)
///   min_child: stop when min{b - s + 1, e - b} < delta_T
enum class StopRule { max_child, min_child };

/// User-facing knobs. Unset optionals take length-dependent defaults.
struct SegmentationSettings {
  double theta = 0.251;
  std::optional<TauTable> taus;
  std::optional<Index> delta_T;
  double balance_c = 3.0;
  std::optional<Index> lambda_T;
  std::optional<int> i_star_initial;
  std::optional<int> i_star_max;
  Boundary boundary = Boundary::reflect;
  StopRule stop_rule = StopRule::max_child;
};

/// Resolved, validated parameters for one series length.
class SegmentationParams {
 public:
  SegmentationParams(Index length, const SegmentationSettings& settings = {});

  Index length() const { return length_; }
  double theta() const { return theta_; }
  const TauTable& taus() const { return taus_; }
  double tau_detect(int scale) const { return taus_.at(scale).detect; }
  double tau_post(int scale) const { return taus_.at(scale).post; }
  Index delta_T() const { return delta_T_; }
  double balance_c() const { return balance_c_; }
  Index lambda_T() const { return lambda_T_; }
  int i_star_initial() const { return i_star_initial_; }
  int i_star_max() const { return i_star_max_; }
  Boundary boundary() const { return boundary_; }
  StopRule stop_rule() const { return stop_rule_; }

  /// T^theta * sqrt(ln T), the length factor shared by every threshold.
  double threshold_scale() const;

 private:
  Index length_;
  double theta_;
  TauTable taus_;
  Index delta_T_;
  double balance_c_;
  Index lambda_T_;
  int i_star_initial_;
  int i_star_max_;
  Boundary boundary_;
  StopRule stop_rule_;
};

Index default_delta(Index length);
Index default_lambda(Index length);
int default_i_star_initial(Index length);
int default_i_star_max(Index length);

}  // namespace wavseg
