#include "wavseg/calibrate.hpp"
#include "wavseg/log.hpp"
#include "wavseg/parallel.hpp"
#include "wavseg/wavelet.hpp"

#include "generators.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace wavseg;
using Catch::Approx;

namespace {

// The null ratio written with 1-based b in (1, T) and explicit weights.
double null_ratio_oracle(const Eigen::VectorXd& row, double theta) {
  const Index T = row.size();
  const double t = double(T);
  const double mean = row.mean();
  double best = 0.0;
  for (Index b = 2; b <= T - 1; ++b) {
    double left = 0.0, right = 0.0;
    for (Index k = 1; k <= b; ++k) left += row[k - 1];
    for (Index k = b + 1; k <= T; ++k) right += row[k - 1];
    const double v = std::abs(std::sqrt((t - b) / (t * b)) * left - std::sqrt(b / (t * (t - b))) * right);
    best = std::max(best, v);
  }
  return best / (mean * std::pow(t, theta) * std::sqrt(std::log(t)));
}

struct QuietLog {
  log::Sink previous = log::set_warning_sink([](std::string_view) {});
  ~QuietLog() { log::set_warning_sink(previous); }
};

}  // namespace

TEST_CASE("correlated Gaussian has the AR(1) lag-one correlation") {
  for (double rho : {0.0, 0.3, 0.6, 0.9}) {
    double total = 0.0;
    for (int r = 0; r < 100; ++r) {
      std::mt19937_64 rng(derive_seed(61, r));
      const auto x = correlated_gaussian(2048, rho, rng);
      const Eigen::VectorXd a = x.head(2047).array() - x.head(2047).mean();
      const Eigen::VectorXd b = x.tail(2047).array() - x.tail(2047).mean();
      total += a.dot(b) / std::sqrt(a.squaredNorm() * b.squaredNorm());
    }
    CHECK(std::abs(total / 100 - rho) < 0.05);
  }
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(correlated_gaussian(10, 1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(correlated_gaussian(10, -0.1, rng), std::invalid_argument);
}

TEST_CASE("null ratio matches the explicit formula") {
  auto rng = testing::rng_for(62);
  for (int trial = 0; trial < 20; ++trial) {
    const auto row = testing::random_nonnegative(rng, 8, 200);
    CHECK(null_ratio(row, 0.251) == Approx(null_ratio_oracle(row, 0.251)).epsilon(1e-10));
  }
}

TEST_CASE("null ratio is scale free and positive") {
  auto rng = testing::rng_for(63);
  for (int trial = 0; trial < 20; ++trial) {
    const auto row = testing::random_nonnegative(rng, 16, 400);
    const double alpha = testing::log_uniform(rng, 0.01, 100.0);
    const double u = null_ratio(row, 0.3);
    CHECK(u > 0.0);
    CHECK(null_ratio(Eigen::VectorXd(alpha * row), 0.3) == Approx(u).epsilon(1e-10));
  }
  CHECK(null_ratio(Eigen::VectorXd::Zero(10), 0.3) == 0.0);
  CHECK_THROWS_AS(null_ratio(Eigen::VectorXd::Ones(2), 0.3), std::invalid_argument);
}

TEST_CASE("null_statistic is deterministic per seed and agrees with null_statistics") {
  std::mt19937_64 a(64), b(64), c(64);
  const double u1 = null_statistic(512, 0.3, -2, 0.251, a);
  const double u2 = null_statistic(512, 0.3, -2, 0.251, b);
  CHECK(u1 == u2);
  CHECK(null_statistics(512, 0.3, 3, 0.251, c)[1] == u1);
  CHECK_THROWS_AS(null_statistic(8, 0.0, -4, 0.251, a), std::invalid_argument);
}

TEST_CASE("nearest-rank quantile") {
  const std::vector<double> v{10, 9, 8, 7, 6, 5, 4, 3, 2, 1};
  CHECK(nearest_rank_quantile(v, 0.95) == 10);
  CHECK(nearest_rank_quantile(v, 0.9) == 9);
  CHECK(nearest_rank_quantile(v, 0.5) == 5);
  CHECK(nearest_rank_quantile(v, 0.01) == 1);
  CHECK(nearest_rank_quantile(v, 1.0) == 10);
  CHECK_THROWS_AS(nearest_rank_quantile({}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(nearest_rank_quantile(v, 0.0), std::invalid_argument);
}

TEST_CASE("rho = 0 null quantile at scale -1 is near the published 0.39") {
  std::vector<double> draws;
  for (int r = 0; r < 1000; ++r) {
    std::mt19937_64 rng(derive_seed(65, r));
    draws.push_back(null_statistic(1024, 0.0, -1, 0.251, rng));
  }
  CHECK(std::abs(nearest_rank_quantile(draws, 0.95) - 0.39) <= 0.05);
}

TEST_CASE("calibration is deterministic and thread independent") {
  QuietLog quiet;
  CalibrationOptions options;
  options.length = 256;
  options.scales = 3;
  options.reps_per_combo = 100;
  options.seed = 66;
  options.threads = 1;
  const auto one = calibrate_tau(options);
  options.threads = 4;
  const auto four = calibrate_tau(options);
  CHECK(one == four);
  CHECK(one.length() == 256);
  for (const auto& [scale, tau] : one.entries()) CHECK(tau.post >= tau.detect);
}

TEST_CASE("calibration rejects too few reps or too many scales") {
  CalibrationOptions options;
  options.reps_per_combo = 99;
  CHECK_THROWS_AS(calibrate_tau(options), std::invalid_argument);
  options.reps_per_combo = 100;
  options.length = 64;
  options.scales = 7;
  CHECK_THROWS_AS(calibrate_tau(options), std::invalid_argument);
}

TEST_CASE("larger runs extend smaller ones") {
  CalibrationOptions small;
  small.length = 128;
  small.scales = 2;
  small.reps_per_combo = 100;
  small.seed = 67;
  auto large = small;
  large.reps_per_combo = 200;
  const auto a = calibration_draws(small);
  const auto b = calibration_draws(large);
  for (std::size_t level = 0; level < 4; ++level) {
    for (std::size_t j = 0; j < 100; ++j) CHECK(a[0][level * 100 + j] == b[0][level * 200 + j]);
  }
}

TEST_CASE("quantile estimates settle within two bootstrap standard errors") {
  CalibrationOptions options;
  options.length = 512;
  options.scales = 4;
  options.reps_per_combo = 500;
  options.seed = 68;
  const auto base = calibration_draws(options);
  options.reps_per_combo = 1000;
  const auto doubled = calibration_draws(options);
  for (std::size_t s = 0; s < base.size(); ++s) {
    for (double q : {0.95, 0.975}) {
      const double se = bootstrap_quantile_se(base[s], q, 200, 69);
      CHECK(se > 0.0);
      CHECK(std::abs(nearest_rank_quantile(doubled[s], q) - nearest_rank_quantile(base[s], q)) < 2.0 * se);
    }
  }
}

TEST_CASE("bootstrap standard error shrinks with sample size") {
  auto rng = testing::rng_for(70);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> small(400), large(6400);
  for (auto& v : small) v = normal(rng);
  for (auto& v : large) v = normal(rng);
  CHECK(bootstrap_quantile_se(large, 0.95, 200, 71) < bootstrap_quantile_se(small, 0.95, 200, 71));
  CHECK_THROWS_AS(bootstrap_quantile_se(small, 0.95, 1, 71), std::invalid_argument);
}
