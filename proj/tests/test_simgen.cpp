#include "wavseg/parallel.hpp"
#include "wavseg/simgen.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace wavseg;
using Catch::Approx;

namespace {

double lag1_correlation(const Eigen::VectorXd& x) {
  const Index n = x.size();
  const Eigen::VectorXd c = x.array() - x.mean();
  return c.head(n - 1).dot(c.tail(n - 1)) / c.squaredNorm();
}

}  // namespace

TEST_CASE("preset breakpoints and lengths") {
  CHECK(model_preset("B").breakpoints() == std::vector<Index>{511, 767});
  CHECK(model_preset("C").breakpoints() == std::vector<Index>{399, 611});
  CHECK(model_preset("D").breakpoints() == std::vector<Index>{49});
  CHECK(model_preset("D").segments()[0].length == 50);
  CHECK(model_preset("D").segments()[1].length == 974);
  CHECK(model_preset("E").breakpoints() == std::vector<Index>{399, 749});
  CHECK(model_preset("F").breakpoints() == std::vector<Index>{399, 749});
  CHECK(model_preset("G").breakpoints() == std::vector<Index>{124, 531, 703});
  CHECK(model_preset("A", -0.4).breakpoints().empty());
  CHECK(model_preset("A", -0.4).segments()[0].ar == std::vector<double>{-0.4});
  for (const char* name : {"A", "B", "C", "D", "E", "F", "G"}) CHECK(model_preset(name).length() == 1024);
  CHECK_THROWS_AS(model_preset("H"), std::invalid_argument);
}

TEST_CASE("preset coefficients") {
  const auto b = model_preset("B");
  CHECK(b.segments()[1].ar == std::vector<double>{1.68, -0.81});
  CHECK(b.segments()[2].ar == std::vector<double>{1.32, -0.81});
  const auto e = model_preset("E");
  CHECK(e.segments()[1].innovation_sd == 1.5);
  const auto f = model_preset("F");
  CHECK(f.segments()[0].ar == std::vector<double>{1.399, -0.4});
  CHECK(f.segments()[0].innovation_sd == 0.8);
  CHECK(f.segments()[2].ar == std::vector<double>{0.699, 0.3});
  const auto g = model_preset("G");
  CHECK(g.segments()[0].ma == std::vector<double>{0.6});
  CHECK(g.segments()[3].ma == std::vector<double>{-0.5});
}

TEST_CASE("causality check") {
  CHECK(is_causal({}));
  CHECK(is_causal({0.999}));
  CHECK(is_causal({-0.999}));
  CHECK_FALSE(is_causal({1.0}));
  CHECK_FALSE(is_causal({1.01}));
  CHECK(is_causal({1.68, -0.81}));
  CHECK(is_causal({1.399, -0.4}));
  // 1 - 0.5 z - 0.5 z^2 has a unit root.
  CHECK_FALSE(is_causal({0.5, 0.5}));
}

TEST_CASE("spec validation") {
  using S = ArmaSegment;
  CHECK_THROWS_AS(PiecewiseModelSpec({}), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseModelSpec({S{0, {}, {}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseModelSpec({S{10, {}, {}, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseModelSpec({S{10, {1.2}, {}, 1.0}}), std::invalid_argument);
  CHECK_NOTHROW(PiecewiseModelSpec({S{10, {}, {}, 0.0}}));
}

TEST_CASE("rescaling keeps proportions") {
  const auto b = model_preset("B").rescaled(2048);
  CHECK(b.length() == 2048);
  CHECK(b.breakpoints() == std::vector<Index>{1023, 1535});
  const auto half = model_preset("B").rescaled(512);
  CHECK(half.breakpoints() == std::vector<Index>{255, 383});
}

TEST_CASE("generation is deterministic per seed") {
  std::mt19937_64 a(81), b(81), c(82);
  const auto spec = model_preset("G");
  const auto x = generate(spec, a);
  CHECK(x.values() == generate(spec, b).values());
  CHECK(x.values() != generate(spec, c).values());
  CHECK(x.size() == 1024);
}

TEST_CASE("generation follows the ARMA recursion") {
  const auto spec = model_preset("G");
  std::mt19937_64 rng(83);
  const auto x = generate(spec, rng);

  std::mt19937_64 replay(83);
  std::normal_distribution<double> normal(0.0, 1.0);
  double x1 = 0.0, e1 = 0.0;
  for (Index k = 0; k < kBurnIn; ++k) {
    const double e = normal(replay);
    const double v = 0.7 * x1 + e + 0.6 * e1;
    x1 = v;
    e1 = e;
  }
  const double phi[] = {0.7, 0.3, 0.9, 0.1};
  const double theta[] = {0.6, 0.3, 0.0, -0.5};
  const Index ends[] = {125, 532, 704, 1024};
  int seg = 0;
  for (Index t = 0; t < 1024; ++t) {
    if (t >= ends[seg]) ++seg;
    const double e = normal(replay);
    const double v = phi[seg] * x1 + e + theta[seg] * e1;
    CHECK(x[t] == Approx(v).margin(1e-12));
    x1 = v;
    e1 = e;
  }
}

TEST_CASE("model A lag-one autocorrelation matches the coefficient") {
  for (double a : {0.7, -0.4}) {
    double total = 0.0;
    for (int r = 0; r < 100; ++r) {
      std::mt19937_64 rng(derive_seed(84, r));
      total += lag1_correlation(generate(model_preset("A", a), rng).values());
    }
    CHECK(std::abs(total / 100 - a) < 0.05);
  }
}

TEST_CASE("model E differences scale with the innovation sd") {
  double ratio = 0.0;
  for (int r = 0; r < 100; ++r) {
    std::mt19937_64 rng(derive_seed(85, r));
    const auto x = generate(model_preset("E"), rng).values();
    const Eigen::VectorXd dx = x.tail(1023) - x.head(1023);
    // dx[t] covers X_{t+1} - X_t; keep clear of the regime edges.
    const Eigen::VectorXd first = dx.segment(10, 380);
    const Eigen::VectorXd second = dx.segment(410, 330);
    const auto var = [](const Eigen::VectorXd& v) { return (v.array() - v.mean()).square().sum() / (v.size() - 1); };
    ratio += var(second) / var(first);
  }
  CHECK(std::abs(ratio / 100 - 2.25) < 0.2);
}
