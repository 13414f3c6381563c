#pragma once

#include "wavseg/core.hpp"
#include "wavseg/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace wavseg {

/// Prefix sums of a sequence; sum(s, e) is the inclusive range total.
template <typename Scalar>
class PartialSums {
 public:
  template <typename Derived>
  explicit PartialSums(const Eigen::DenseBase<Derived>& seq) : prefix_(seq.size() + 1) {
    prefix_[0] = Scalar(0);
    for (Index t = 0; t < seq.size(); ++t) prefix_[t + 1] = prefix_[t] + Scalar(seq.derived().coeff(t));
  }

  Index size() const { return prefix_.size() - 1; }
  Scalar sum(Index s, Index e) const { return prefix_[e + 1] - prefix_[s]; }

 private:
  VectorX<Scalar> prefix_;
};

/// CUSUM contrast from the two partial sums around a split:
///   sqrt(nL nR / n) * (mean_left - mean_right).
/// Algebraically identical to the weighted-sum form
///   sqrt(nR / (n nL)) * sum_left - sqrt(nL / (n nR)) * sum_right.
template <typename Scalar>
Scalar cusum_from_sums(Scalar left_sum, Scalar right_sum, Index left_n, Index right_n) {
  const Scalar nl = Scalar(left_n);
  const Scalar nr = Scalar(right_n);
  return std::sqrt(nl * nr / (nl + nr)) * (left_sum / nl - right_sum / nr);
}

/// Generalised CUSUM statistic Y^b_{s,e} over seq[s..e] split after b.
template <typename Derived>
typename Derived::Scalar cusum_stat(const Eigen::DenseBase<Derived>& seq, Index s, Index e, Index b) {
  using Scalar = typename Derived::Scalar;
  if (s < 0 || e >= seq.size() || e - s + 1 < 2) {
    throw std::invalid_argument("cusum_stat: need 0 <= s < e < length");
  }
  if (b < s || b >= e) throw std::invalid_argument("cusum_stat: need s <= b < e");
  const auto& x = seq.derived();
  Scalar left = Scalar(0);
  Scalar right = Scalar(0);
  for (Index t = s; t <= b; ++t) left += x.coeff(t);
  for (Index t = b + 1; t <= e; ++t) right += x.coeff(t);
  return cusum_from_sums(left, right, b - s + 1, e - b);
}

template <typename Scalar>
struct Split {
  Index b = 0;
  Scalar d = Scalar(0);  // CUSUM at b
  Scalar m = Scalar(0);  // segment total / sqrt(n)
};

/// True when both children of a split after b in [s, e] have a length ratio
/// of at most c^2.
inline bool balanced(Index s, Index e, Index b, double c) {
  const double left = static_cast<double>(b - s + 1);
  const double right = static_cast<double>(e - b);
  const double c2 = c * c;
  return right <= c2 * left && left <= c2 * right;
}

/// Best admissible split of [s, e]: maximises |Y^b_{s,e}| over b in (s, e)
/// subject to the balance constraint. Ties go to the smallest b. Empty when
/// no candidate is admissible.
template <typename Scalar>
std::optional<Split<Scalar>> find_best_split(const PartialSums<Scalar>& sums, Index s, Index e, double balance_c) {
  if (s < 0 || e >= sums.size() || e - s + 1 < 2) {
    throw std::invalid_argument("find_best_split: need 0 <= s < e < length");
  }
  std::optional<Split<Scalar>> best;
  Scalar best_abs = Scalar(-1);
  for (Index b = s + 1; b < e; ++b) {
    if (!balanced(s, e, b, balance_c)) continue;
    const Scalar d = cusum_from_sums(sums.sum(s, b), sums.sum(b + 1, e), b - s + 1, e - b);
    if (std::abs(d) > best_abs) {
      best_abs = std::abs(d);
      best = Split<Scalar>{b, d, Scalar(0)};
    }
  }
  if (best) best->m = sums.sum(s, e) / std::sqrt(Scalar(e - s + 1));
  return best;
}

template <typename Derived>
auto find_best_split(const Eigen::DenseBase<Derived>& seq, Index s, Index e, double balance_c) {
  return find_best_split(PartialSums<typename Derived::Scalar>(seq), s, e, balance_c);
}

/// Hard threshold |d| > m * tau * T^theta * sqrt(ln T / n). With m = 0 the
/// ratio |d|/m is taken as 0, so the test fails.
inline bool threshold_test(double d, double m, Index n, Index length, double tau, double theta) {
  if (n < 2 || length < n) throw std::invalid_argument("threshold_test: need 2 <= n <= T");
  const double t = static_cast<double>(length);
  const double multiplier = tau * std::pow(t, theta) * std::sqrt(std::log(t) / static_cast<double>(n));
  return std::abs(d) > m * multiplier;
}

/// One node of the segmentation tree: level j, location l, interval [s, e].
struct SegmentNode {
  int level = 1;
  std::uint64_t location = 1;  // saturates past level 64
  Index s = 0;
  Index e = 0;
  std::optional<Index> b;
  std::optional<double> d;
  std::optional<double> m;
  bool detected = false;  // threshold test passed at b

  Index n() const { return e - s + 1; }
};

namespace detail {

template <typename Derived>
void require_nonnegative(const Eigen::DenseBase<Derived>& seq, const char* who) {
  if (seq.size() < 2) throw std::invalid_argument(std::string(who) + ": length must be at least 2");
  if (!seq.derived().allFinite() || (seq.derived().array() < 0).any()) {
    throw std::invalid_argument(std::string(who) + ": sequence must be finite and nonnegative");
  }
}

inline SegmentNode make_node(int level, std::uint64_t location, Index s, Index e) {
  SegmentNode node;
  node.level = level;
  node.location = location;
  node.s = s;
  node.e = e;
  return node;
}

inline std::uint64_t child_location(std::uint64_t l, int offset) {
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  if (l > cap / 2) return cap;
  return 2 * l - static_cast<std::uint64_t>(offset);
}

}  // namespace detail

/// Every node visited by the thresholded binary segmentation, in visit order.
template <typename Derived>
std::vector<SegmentNode> segmentation_tree(const Eigen::DenseBase<Derived>& seq, const SegmentationParams& params,
                                           int scale) {
  using Scalar = typename Derived::Scalar;
  detail::require_nonnegative(seq, "binary_segment");
  const Index length = seq.size();
  const double tau = params.tau_detect(scale);
  const PartialSums<Scalar> sums(seq);

  std::vector<SegmentNode> visited;
  std::vector<SegmentNode> pending{detail::make_node(1, 1, 0, length - 1)};
  while (!pending.empty()) {
    SegmentNode node = pending.back();
    pending.pop_back();
    const auto split = node.n() >= 3 ? find_best_split(sums, node.s, node.e, params.balance_c())
                                     : std::optional<Split<Scalar>>{};
    if (split) {
      node.b = split->b;
      node.d = static_cast<double>(split->d);
      node.m = static_cast<double>(split->m);
      node.detected = threshold_test(*node.d, *node.m, node.n(), length, tau, params.theta());
    }
    visited.push_back(node);
    if (!node.detected) continue;

    const Index left_n = *node.b - node.s + 1;
    const Index right_n = node.e - *node.b;
    const Index guard = params.stop_rule() == StopRule::max_child ? std::max(left_n, right_n)
                                                                  : std::min(left_n, right_n);
    if (guard < params.delta_T()) continue;
    // Right child pushed first so the left subtree is visited first.
    pending.push_back(detail::make_node(node.level + 1, detail::child_location(node.location, 0), *node.b + 1, node.e));
    pending.push_back(detail::make_node(node.level + 1, detail::child_location(node.location, 1), node.s, *node.b));
  }
  return visited;
}

/// Thresholded binary segmentation of one nonnegative sequence. Returns every
/// split that passed the threshold test, sorted.
template <typename Derived>
BreakpointSet binary_segment(const Eigen::DenseBase<Derived>& seq, const SegmentationParams& params, int scale) {
  std::vector<Breakpoint> found;
  for (const auto& node : segmentation_tree(seq, params, scale)) {
    if (node.detected) found.push_back({*node.b, scale, std::abs(*node.d) / *node.m});
  }
  return BreakpointSet::sorted(seq.size(), std::move(found));
}

/// Within-scale pruning. Each breakpoint is re-tested on the span between its
/// neighbours (sentinels -1 and T - 1) against tau_post; the weakest failing
/// breakpoint is dropped and the sweep repeats until every survivor passes.
template <typename Derived>
BreakpointSet within_scale_postprocess(const Eigen::DenseBase<Derived>& seq, const BreakpointSet& detected,
                                       const SegmentationParams& params, int scale) {
  using Scalar = typename Derived::Scalar;
  detail::require_nonnegative(seq, "within_scale_postprocess");
  const Index length = seq.size();
  if (detected.length() != length) {
    throw std::invalid_argument("within_scale_postprocess: breakpoint set length mismatch");
  }
  const PartialSums<Scalar> sums(seq);
  const double limit = params.tau_post(scale) * params.threshold_scale();

  std::vector<Breakpoint> kept = detected.items();
  while (!kept.empty()) {
    std::size_t weakest = kept.size();
    double weakest_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < kept.size(); ++p) {
      const Index s = p == 0 ? 0 : kept[p - 1].index + 1;
      const Index e = p + 1 == kept.size() ? length - 1 : kept[p + 1].index;
      const Index b = kept[p].index;
      const double total = static_cast<double>(sums.sum(s, e));
      const double stat = std::abs(static_cast<double>(
          cusum_from_sums(sums.sum(s, b), sums.sum(b + 1, e), b - s + 1, e - b)));
      const double mean = total / static_cast<double>(e - s + 1);
      if (stat > limit * mean) continue;
      const double ratio = mean > 0.0 ? stat / (limit * mean) : 0.0;
      if (ratio < weakest_ratio) {
        weakest_ratio = ratio;
        weakest = p;
      }
    }
    if (weakest == kept.size()) break;
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(weakest));
  }
  return BreakpointSet(length, std::move(kept));
}

/// Piecewise-constant variance profile for the multiplicative model.
struct VarianceSegment {
  Index length = 0;
  double variance = 0.0;
};

/// Y^2_t = sigma^2_t * Z^2_t with Z a stationary Gaussian AR(1) sequence,
/// cor(Z_t, Z_{t+k}) = rho^|k|.
template <typename Rng>
VectorX<double> generate_multiplicative(const std::vector<VarianceSegment>& profile, Index length, double rho,
                                        Rng& rng) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("generate_multiplicative: rho must be in [0, 1)");
  Index total = 0;
  for (const auto& seg : profile) {
    if (seg.length < 1 || !(seg.variance >= 0.0) || !std::isfinite(seg.variance)) {
      throw std::invalid_argument("generate_multiplicative: segments need positive length and variance >= 0");
    }
    total += seg.length;
  }
  if (total != length) throw std::invalid_argument("generate_multiplicative: segment lengths must sum to T");

  std::normal_distribution<double> normal(0.0, 1.0);
  const double innovation = std::sqrt(1.0 - rho * rho);
  VectorX<double> out(length);
  double z = normal(rng);
  Index t = 0;
  for (const auto& seg : profile) {
    for (Index k = 0; k < seg.length; ++k, ++t) {
      if (t > 0) z = rho * z + innovation * normal(rng);
      out[t] = seg.variance * z * z;
    }
  }
  return out;
}

}  // namespace wavseg
