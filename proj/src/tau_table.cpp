#include "wavseg/tau_table.hpp"
#include "wavseg/log.hpp"

#include <atomic>
#include <string>

namespace wavseg {

TauTable::TauTable(Index length, std::map<int, TauPair> per_scale)
    : length_(length), per_scale_(std::move(per_scale)) {
  if (length_ < 2) throw std::invalid_argument("TauTable: series length must be at least 2");
  for (const auto& [scale, tau] : per_scale_) {
    if (!is_valid_scale(scale)) {
      throw std::invalid_argument("TauTable: invalid scale " + std::to_string(scale));
    }
    if (!(tau.detect > 0.0) || !(tau.post >= tau.detect) || !std::isfinite(tau.post)) {
      throw std::invalid_argument("TauTable: need 0 < tau_detect <= tau_post at scale " +
                                  std::to_string(scale));
    }
  }
  // std::map orders scales ascending, i.e. coarsest first.
  const TauPair* coarser = nullptr;
  for (const auto& [scale, tau] : per_scale_) {
    if (coarser != nullptr && (tau.detect > coarser->detect || tau.post > coarser->post)) {
      log::warn("TauTable: thresholds decrease toward coarser scale below " + std::to_string(scale));
    }
    coarser = &tau;
  }
}

TauTable TauTable::published() {
  return TauTable(1024, {{-1, {0.39, 0.48}},
                         {-2, {0.46, 0.52}},
                         {-3, {0.67, 0.75}},
                         {-4, {0.83, 0.96}}});
}

int TauTable::coarsest_scale() const {
  if (per_scale_.empty()) throw std::out_of_range("TauTable: empty");
  return per_scale_.begin()->first;
}

const TauPair& TauTable::at(int scale) const {
  auto it = per_scale_.find(scale);
  if (it == per_scale_.end()) {
    throw std::out_of_range("TauTable: no entry for scale " + std::to_string(scale));
  }
  return it->second;
}

TauTable TauTable::extended_with(const TauTable& other) const {
  auto merged = per_scale_;
  for (const auto& [scale, tau] : other.per_scale_) merged.emplace(scale, tau);
  return TauTable(length_, std::move(merged));
}

namespace {

// Scales coarser than -4 are not in the published table. These come from
// `wavseg calibrate --T 1024 --reps 2500 --seed 20240601 --scales 8 --boundary reflect`
// (mixed rho, nearest-rank quantiles).
const std::map<int, TauPair>& coarse_extension() {
  static const std::map<int, TauPair> table = {
      {-5, {1.17, 1.37}},
      {-6, {1.53, 1.77}},
      {-7, {1.88, 2.15}},
      {-8, {2.18, 2.44}},
  };
  return table;
}

}  // namespace

TauTable default_tau_table(Index length, int coarsest) {
  static std::atomic<bool> warned{false};
  if (length != 1024 && !warned.exchange(true)) {
    log::warn("using T=1024 threshold table for series length " + std::to_string(length) +
              "; run `wavseg calibrate` for a length-specific table");
  }
  auto entries = TauTable::published().entries();
  for (const auto& [scale, tau] : coarse_extension()) {
    if (scale >= coarsest) entries.emplace(scale, tau);
  }
  return TauTable(length, std::move(entries));
}

}  // namespace wavseg
