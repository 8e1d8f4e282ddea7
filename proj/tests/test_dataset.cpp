#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "vnd/csv.hpp"
#include "vnd/dataset.hpp"
#include "vnd/error.hpp"

using namespace vnd;

namespace {

VariableSpec numeric(double lo, double hi, bool log = false) {
  VariableSpec s;
  s.name = "v";
  s.scaleMin = lo;
  s.scaleMax = hi;
  s.logScale = log;
  return s;
}

}  // namespace

TEST(Normalize, Midpoint) { EXPECT_DOUBLE_EQ(normalize_value(numeric(10, 30), 20), 0.5); }

TEST(Normalize, LogMidpoint) {
  const double expected = (std::log10(10.0) - std::log10(1.0)) / (std::log10(100.0) - std::log10(1.0));
  EXPECT_NEAR(normalize_value(numeric(1, 100, true), 10), expected, 1e-12);
  EXPECT_NEAR(expected, 0.5, 1e-12);
}

TEST(Normalize, ClampsAndDegenerate) {
  EXPECT_DOUBLE_EQ(normalize_value(numeric(0, 1), 2), 1.0);
  EXPECT_DOUBLE_EQ(normalize_value(numeric(0, 1), -2), 0.0);
  auto flat = numeric(5, 5);
  flat.degenerate = true;
  EXPECT_DOUBLE_EQ(normalize_value(flat, 5), 0.0);
}

TEST(Normalize, RoundTrip) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double lo = 1.0 + 50.0 * u(gen);
    const double hi = lo + 1.0 + 1000.0 * u(gen);
    const bool log = i % 2 == 0;
    const auto spec = numeric(lo, hi, log);
    const double raw = lo + (hi - lo) * u(gen);
    const double x = normalize_value(spec, raw);
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 1.0);
    EXPECT_NEAR(denormalize_value(spec, x), raw, 1e-9 * hi);
  }
}

TEST(Normalize, TableMissingInputAndTarget) {
  const auto t = load_csv("x,c,y\n10,b,1\n,a,2\n30,b,\n20,c,3\n");
  auto specs = infer_specs(t);
  set_target(specs, "y");
  const Dataset d = normalize(t, specs);
  ASSERT_EQ(d.size(), 3u);  // row with a missing target dropped
  EXPECT_EQ(d.inputNames(), (std::vector<std::string>{"x", "c"}));
  EXPECT_DOUBLE_EQ(d.value(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(d.value(1, 0), 0.0);  // missing -> scaled minimum
  EXPECT_DOUBLE_EQ(d.value(2, 0), 0.5);
  EXPECT_DOUBLE_EQ(d.value(0, 1), 0.5);  // categories a,b,c -> 0, 0.5, 1
  EXPECT_DOUBLE_EQ(d.value(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(d.value(2, 1), 1.0);
  EXPECT_EQ(d.target(), (std::vector<double>{0.0, 0.5, 1.0}));
  for (double v : d.rows()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Normalize, NeedsTargetAndInputs) {
  const auto t = load_csv("x,y\n1,2\n3,4\n");
  auto specs = infer_specs(t);
  try {
    normalize(t, specs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoTarget);
  }
  set_target(specs, "y");
  set_enabled(specs, "x", false);
  try {
    normalize(t, specs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoEnabledInputs);
  }
}

TEST(Threshold, DefaultIsHalf) {
  EXPECT_DOUBLE_EQ(default_threshold(std::vector<double>{0.0, 0.2, 1.0}), 0.5);
}

TEST(Threshold, MedianSplitsAboutHalf) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> y(401);
  for (auto& v : y) v = u(gen) * u(gen);
  const double m = median_threshold(y);
  const auto high = std::count_if(y.begin(), y.end(), [&](double v) { return v >= m; });
  EXPECT_NEAR(static_cast<double>(high) / y.size(), 0.5, 0.01);
}

TEST(Threshold, ConstantTargetAllHigh) {
  const auto t = load_csv("x,y\n1,5\n2,5\n3,5\n");
  auto specs = infer_specs(t);
  set_target(specs, "y");
  const Dataset d = normalize(t, specs);
  EXPECT_DOUBLE_EQ(d.threshold(), default_threshold(d.target()));
  EXPECT_TRUE(d.targetDegenerate());
  EXPECT_EQ(d.highCount(), 3u);
}

TEST(Threshold, HighMaskCountsMatch) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> rows(100), target(100);
  for (auto& v : rows) v = u(gen);
  for (auto& v : target) v = u(gen);
  std::vector<VariableSpec> specs(2);
  specs[0].name = "x";
  specs[1].name = "y";
  specs[1].isTarget = true;
  const Dataset base(specs, {"x"}, rows, target, 0.5);
  for (double tau : {0.1, 0.3, 0.5, 0.9}) {
    const Dataset d = base.withThreshold(tau);
    const auto expected = std::count_if(target.begin(), target.end(), [&](double y) { return y >= tau; });
    EXPECT_EQ(d.highCount(), static_cast<std::size_t>(expected));
    EXPECT_EQ(std::count(d.highMask().begin(), d.highMask().end(), true), expected);
    EXPECT_EQ(d.rows(), base.rows());
  }
  EXPECT_THROW(base.withThreshold(0.0), Error);
  EXPECT_THROW(base.withThreshold(1.0), Error);
}

TEST(Histogram, Examples) {
  EXPECT_EQ(variable_histogram(std::vector<double>{0, 0.5, 1.0}, 2), (std::vector<std::size_t>{1, 2}));
  const auto h = variable_histogram(std::vector<double>(7, 0.1), 10);
  EXPECT_EQ(h[1], 7u);
}

TEST(Histogram, UniformWithinBinomialBound) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(10000);
  for (auto& x : v) x = u(gen);
  for (auto c : variable_histogram(v, 10)) {
    EXPECT_GE(c, 850u);
    EXPECT_LE(c, 1150u);
  }
}

TEST(Histogram, BinIndexEdges) {
  EXPECT_EQ(bin_index(0.0, 10), 0u);
  EXPECT_EQ(bin_index(0.1, 10), 1u);
  EXPECT_EQ(bin_index(0.999, 10), 9u);
  EXPECT_EQ(bin_index(1.0, 10), 9u);
}
