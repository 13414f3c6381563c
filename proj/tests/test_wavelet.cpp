#include "wavseg/simgen.hpp"
#include "wavseg/wavelet.hpp"

#include "generators.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace wavseg;
using Catch::Approx;

namespace {

// Direct evaluation of sum_k x_{t+k} psi_k with the boundary applied by hand.
VectorX<double> convolve_oracle(const VectorX<double>& x, int scale, Boundary boundary) {
  const Index n = x.size();
  const Index len = Index{1} << -scale;
  const double h = std::pow(2.0, scale / 2.0);
  VectorX<double> out(n);
  for (Index t = 0; t < n; ++t) {
    double acc = 0.0;
    for (Index k = 0; k < len; ++k) {
      Index j = t + k;
      if (j >= n) j = boundary == Boundary::periodic ? j - n : 2 * n - 1 - j;
      acc += x[j] * (k < len / 2 ? h : -h);
    }
    out[t] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("Haar filter taps") {
  const double r = 1.0 / std::sqrt(2.0);
  const auto f1 = haar_filter(-1);
  REQUIRE(f1.size() == 2);
  CHECK(f1.taps()[0] == Approx(r));
  CHECK(f1.taps()[1] == Approx(-r));

  const auto f2 = haar_filter(-2);
  REQUIRE(f2.size() == 4);
  CHECK(f2.taps()[0] == Approx(0.5));
  CHECK(f2.taps()[1] == Approx(0.5));
  CHECK(f2.taps()[2] == Approx(-0.5));
  CHECK(f2.taps()[3] == Approx(-0.5));

  const auto f3 = haar_filter(-3);
  REQUIRE(f3.size() == 8);
  const double h3 = 1.0 / std::pow(2.0, 1.5);
  for (Index k = 0; k < 4; ++k) CHECK(f3.taps()[k] == Approx(h3));
  for (Index k = 4; k < 8; ++k) CHECK(f3.taps()[k] == Approx(-h3));
}

TEST_CASE("Haar filters have zero sum and unit norm") {
  for (int scale = -1; scale >= -10; --scale) {
    const auto f = haar_filter(scale);
    CHECK(std::abs(f.taps().sum()) < 1e-12);
    CHECK(f.taps().squaredNorm() == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Haar filter rejects bad scales") {
  CHECK_THROWS_AS(haar_filter(0), std::invalid_argument);
  CHECK_THROWS_AS(haar_filter(1), std::invalid_argument);
  CHECK_THROWS_AS(haar_filter(-31), std::invalid_argument);
  CHECK_THROWS_AS(haar_filter(-4, 15), std::invalid_argument);
  CHECK_NOTHROW(haar_filter(-4, 16));
}

TEST_CASE("two-point series at scale -1 with periodic boundary") {
  const TimeSeriesd x{1.0, 3.0};
  const auto d = ndwt_coefficients(x, -1, Boundary::periodic);
  REQUIRE(d.size() == 2);
  CHECK(d[0] == Approx((1.0 - 3.0) / std::sqrt(2.0)));
  CHECK(d[1] == Approx((3.0 - 1.0) / std::sqrt(2.0)));
}

TEST_CASE("scale -1 interior coefficients are scaled first differences") {
  auto rng = testing::rng_for(11);
  const auto x = testing::gaussian_series(rng, 50);
  const auto d = ndwt_coefficients(x, -1);
  const auto p = periodogram_row(x, -1);
  for (Index t = 0; t + 1 < x.size(); ++t) {
    CHECK(d[t] == Approx((x[t] - x[t + 1]) / std::sqrt(2.0)).margin(1e-14));
    CHECK(p[t] == Approx((x[t] - x[t + 1]) * (x[t] - x[t + 1]) / 2.0).margin(1e-14));
  }
}

TEST_CASE("NDWT matches direct convolution for random series") {
  auto rng = testing::rng_for(12);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = testing::uniform_index(rng, 64, 300);
    const auto x = testing::gaussian_series(rng, n, testing::log_uniform(rng, 0.1, 10.0));
    for (const auto boundary : {Boundary::periodic, Boundary::reflect}) {
      for (int scale = -1; scale >= -6; --scale) {
        const auto fast = ndwt_coefficients(x, scale, boundary);
        const auto slow = convolve_oracle(x.values(), scale, boundary);
        REQUIRE(fast.size() == n);
        CHECK((fast - slow).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, slow.cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST_CASE("wavelet_periodogram stacks squared coefficients") {
  auto rng = testing::rng_for(13);
  const auto x = testing::gaussian_series(rng, 128);
  const auto stack = wavelet_periodogram(x, 5);
  CHECK(stack.i_star() == 5);
  CHECK(stack.length() == 128);
  for (int scale = -1; scale >= -5; --scale) {
    const VectorX<double> expected = ndwt_coefficients(x, scale).array().square().matrix();
    const VectorX<double> got = stack.row(scale).transpose();
    CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(wavelet_periodogram(x, 0), std::invalid_argument);
  CHECK_THROWS_AS(wavelet_periodogram(x, 8), std::invalid_argument);
}

TEST_CASE("periodic coefficients are shift covariant") {
  auto rng = testing::rng_for(14);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = testing::uniform_index(rng, 64, 200);
    const Index shift = testing::uniform_index(rng, 1, n - 1);
    const auto x = testing::gaussian_vector(rng, n);
    VectorX<double> shifted(n);
    for (Index t = 0; t < n; ++t) shifted[t] = x[(t + shift) % n];
    for (int scale = -1; scale >= -5; --scale) {
      const auto a = ndwt_coefficients(TimeSeriesd(x), scale, Boundary::periodic);
      const auto b = ndwt_coefficients(TimeSeriesd(shifted), scale, Boundary::periodic);
      for (Index t = 0; t < n; ++t) CHECK(b[t] == Approx(a[(t + shift) % n]).margin(1e-12));
    }
  }
}

TEST_CASE("coefficients are linear in the series") {
  auto rng = testing::rng_for(15);
  const auto x = testing::gaussian_vector(rng, 100);
  const auto y = testing::gaussian_vector(rng, 100);
  const double alpha = 2.5;
  for (int scale = -1; scale >= -4; --scale) {
    const auto lhs = ndwt_coefficients(TimeSeriesd(VectorX<double>(alpha * x + y)), scale);
    const VectorX<double> rhs =
        alpha * ndwt_coefficients(TimeSeriesd(x), scale) + ndwt_coefficients(TimeSeriesd(y), scale);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("model B periodogram at scale -4 shifts level at the true breakpoints") {
  const auto spec = model_preset("B");
  double before = 0.0, middle = 0.0, after = 0.0;
  for (std::uint64_t r = 0; r < 20; ++r) {
    auto rng = testing::rng_for(100 + r);
    const auto row = periodogram_row(generate(spec, rng), -4);
    before += row.segment(0, 512).mean();
    middle += row.segment(512, 256).mean();
    after += row.segment(768, 256).mean();
  }
  CHECK(std::abs(std::log(middle / before)) > std::log(1.5));
  CHECK(std::abs(std::log(after / middle)) > std::log(1.5));
}
