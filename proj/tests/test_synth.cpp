#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "vnd/benchmark.hpp"
#include "vnd/contribution.hpp"
#include "vnd/error.hpp"
#include "vnd/recovery.hpp"
#include "vnd/report.hpp"
#include "vnd/sweep.hpp"

using namespace vnd;

TEST(ThreeVar, TargetValues) {
  EXPECT_DOUBLE_EQ(three_var_target(0.0, 0.5, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(three_var_target(1.0, 0.0, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(three_var_target(0.3, 0.3, 0.9), 0.0);
  EXPECT_DOUBLE_EQ(three_var_target(0.1, 0.4, 0.6), 0.2);
}

TEST(ThreeVar, GridStatistics) {
  const Dataset d = generate(BenchmarkSpec::threeVar());
  ASSERT_EQ(d.size(), 27000u);
  ASSERT_EQ(d.inputNames(), (std::vector<std::string>{"a", "b", "c"}));
  std::size_t above25 = 0;
  std::size_t above40 = 0;
  for (std::size_t n = 0; n < d.size(); ++n) {
    const double y = three_var_target(d.value(n, 0), d.value(n, 1), d.value(n, 2));
    above25 += y > 0.25 ? 1 : 0;
    above40 += y > 0.4 ? 1 : 0;
  }
  const double f25 = static_cast<double>(above25) / d.size();
  const double f40 = static_cast<double>(above40) / d.size();
  EXPECT_GE(f25, 0.11);
  EXPECT_LE(f25, 0.13);
  EXPECT_GE(f40, 0.005);
  EXPECT_LE(f40, 0.011);
  // The normalized threshold marks exactly the raw y >= 0.25 items.
  std::size_t atLeast25 = 0;
  for (std::size_t n = 0; n < d.size(); ++n) {
    atLeast25 += three_var_target(d.value(n, 0), d.value(n, 1), d.value(n, 2)) >= 0.25 ? 1 : 0;
  }
  EXPECT_EQ(d.highCount(), atLeast25);
}

TEST(ThreeVar, SamplingModes) {
  BenchmarkSpec lattice = BenchmarkSpec::threeVar();
  lattice.sampling = Sampling::Lattice;
  lattice.samples = 1000;
  const Dataset l = generate(lattice);
  EXPECT_DOUBLE_EQ(l.value(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(l.value(999, 2), 1.0);

  BenchmarkSpec bad = lattice;
  bad.samples = 1001;
  try {
    generate(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadSampleCount);
  }

  BenchmarkSpec uniform = BenchmarkSpec::threeVar(5);
  uniform.sampling = Sampling::UniformRandom;
  uniform.samples = 1001;
  EXPECT_EQ(generate(uniform).size(), 1001u);
  EXPECT_EQ(generate(uniform).rows(), generate(uniform).rows());
}

TEST(Xor, TargetValues) {
  EXPECT_DOUBLE_EQ(two_var_xor_target(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(two_var_xor_target(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(two_var_xor_target(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(two_var_xor_target(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(two_var_xor_target(0.5, 0.5), 0.25);
}

TEST(Xor, Dataset) {
  const Dataset d = generate(BenchmarkSpec::twoVarXor());
  EXPECT_EQ(d.size(), 10000u);
  EXPECT_EQ(d.inputNames(), (std::vector<std::string>{"A", "B"}));
  for (std::size_t n = 0; n < d.size(); n += 97) {
    EXPECT_EQ(d.highMask()[n], two_var_xor_target(d.value(n, 0), d.value(n, 1)) >= 0.5);
  }
}

TEST(Benchmark, NamesRoundTrip) {
  for (auto k : {BenchmarkKind::ThreeVarMin, BenchmarkKind::TwoVarXor}) {
    EXPECT_EQ(parse_benchmark_kind(to_string(k)), k);
  }
  for (auto s : {Sampling::Grid, Sampling::Lattice, Sampling::UniformRandom}) EXPECT_EQ(parse_sampling(to_string(s)), s);
  EXPECT_THROW(parse_benchmark_kind("four-var"), Error);
  EXPECT_EQ(benchmark_maxima(BenchmarkKind::ThreeVarMin).size(), 6u);
  EXPECT_EQ(benchmark_maxima(BenchmarkKind::TwoVarXor).size(), 2u);
}

TEST(Recovery, NearestMaximum) {
  const auto m = benchmark_maxima(BenchmarkKind::TwoVarXor);
  EXPECT_EQ(nearest_maximum(std::vector<double>{0.9, 0.2}, m), 0u);
  EXPECT_EQ(nearest_maximum(std::vector<double>{0.2, 0.9}, m), 1u);
  EXPECT_EQ(nearest_maximum(std::vector<double>{0.5, 0.5}, m), 0u);  // tie
}

namespace {

// Two steep detectors, one per XOR corner.
Network corner_network() {
  const double k = 40.0;
  Network n(2, 2);
  n.W = {k, -k, -k, k};
  n.b = {-0.5 * k, -0.5 * k};
  n.v = {1.0, 1.0};
  return n;
}

}  // namespace

TEST(Recovery, PerfectDecomposition) {
  BenchmarkSpec spec = BenchmarkSpec::twoVarXor();
  spec.sampling = Sampling::Lattice;
  spec.samples = 441;
  const Dataset d = generate(spec);
  const Network net = corner_network();
  auto nodes = contributions_all(net, d);
  const auto maxima = benchmark_maxima(BenchmarkKind::TwoVarXor);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t n = 0; n < d.size(); ++n) {
      nodes[j].contributions[n] = d.highMask()[n] && nearest_maximum(d.row(n), maxima) == j ? 1.0 : 0.0;
    }
  }
  const auto r = pattern_recovery(net, d, nodes, maxima);
  EXPECT_DOUBLE_EQ(r.coverage, 1.0);
  EXPECT_EQ(r.distinctness, 2u);
  EXPECT_EQ(r.maximumOwner, (std::vector<long>{0, 1}));
  EXPECT_DOUBLE_EQ(r.minPurity, 1.0);
  EXPECT_EQ(r.specializedPatterns, 2u);
  EXPECT_TRUE(r.recovered({}, 2));
  for (const auto& nr : r.nodes) {
    EXPECT_DOUBLE_EQ(nr.purity, 1.0);
    EXPECT_DOUBLE_EQ(*std::max_element(nr.patternShare.begin(), nr.patternShare.end()), 1.0);
  }
}

TEST(Recovery, DormantOnly) {
  BenchmarkSpec spec = BenchmarkSpec::twoVarXor();
  spec.samples = 400;
  const Dataset d = generate(spec);
  Network net(2, 2);
  net.b = {-900.0, -900.0};
  net.v = {1.0, 1.0};
  const auto nodes = contributions_all(net, d);
  ASSERT_TRUE(nodes[0].dormant && nodes[1].dormant);
  const auto r = pattern_recovery(net, d, nodes, benchmark_maxima(BenchmarkKind::TwoVarXor));
  EXPECT_EQ(r.coverage, 0.0);
  EXPECT_EQ(r.distinctness, 0u);
  EXPECT_EQ(r.maximumOwner, (std::vector<long>{-1, -1}));
  EXPECT_TRUE(r.nodes.empty());
}

TEST(Recovery, CriteriaValidated) {
  RecoveryCriteria c;
  c.patternCoverage = 1.5;
  EXPECT_THROW(c.validate(), Error);
}

// On a trained three-variable model the top three nodes each hold a
// different input near 0.
TEST(Recovery, ThreeVarTopNodesIsolateDistinctLowInputs) {
  const Dataset d = generate(BenchmarkSpec::threeVar());
  int structured = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    TrainConfig cfg;
    cfg.seed = seed;
    const auto model = analyze(d, cfg);
    const auto cards = model_cards(model, d, {});
    ASSERT_GE(cards.size(), 3u);
    std::set<std::size_t> lowInputs;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& r = cards[i].ranking;
      const auto low = static_cast<std::size_t>(std::min_element(r.meanValues.begin(), r.meanValues.end()) -
                                                r.meanValues.begin());
      if (r.meanValues[low] < 0.3 && r.weights[low] < 0.0) lowInputs.insert(low);
    }
    structured += lowInputs.size() == 3 ? 1 : 0;
  }
  EXPECT_GE(structured, 2);
}

TEST(Sweep, SingleCellRowCount) {
  SweepSpec spec;
  spec.betas = {0.1};
  spec.hiddenCounts = {4};
  spec.seedsPerCell = 3;
  spec.train.iterations = 200;
  spec.benchmark.samples = 1000;
  const auto r = run_sweep(spec);
  ASSERT_EQ(r.rows.size(), 3u);
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_EQ(r.cells[0].runs, 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(r.rows[i].seed, spec.baseSeed + i);
}

TEST(Sweep, GridOrderIndependentOfJobs) {
  SweepSpec spec;
  spec.seedsPerCell = 2;
  spec.train.iterations = 150;
  spec.benchmark.samples = 1000;
  const auto serial = run_sweep(spec);
  spec.jobs = 4;
  const auto parallel = run_sweep(spec);
  ASSERT_EQ(serial.rows.size(), 12u);
  ASSERT_EQ(serial.cells.size(), 6u);
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    EXPECT_EQ(serial.rows[i].beta, parallel.rows[i].beta);
    EXPECT_EQ(serial.rows[i].hidden, parallel.rows[i].hidden);
    EXPECT_EQ(serial.rows[i].seed, parallel.rows[i].seed);
    EXPECT_EQ(serial.rows[i].mse, parallel.rows[i].mse);
  }
  EXPECT_EQ(serial.rows[0].beta, 0.0);
  EXPECT_EQ(serial.rows[0].hidden, 8u);
  EXPECT_EQ(serial.rows[2].hidden, 20u);
  EXPECT_EQ(serial.rows[4].beta, 0.1);
}

TEST(Sweep, CsvRoundTrip) {
  std::vector<SweepRow> rows(3);
  rows[0] = {0.1, 20, 1, 0.0312345678901234, 0.98765432109876, 4, 0.123456789, 0, std::nullopt};
  rows[1] = {0.5, 8, 2, 1e-7, 1.0, 6, 0.5, 2, std::nullopt};
  rows[2] = {0.0, 8, 3, 0.0, 0.0, 0, 0.0, 0, std::string("diverged")};
  std::stringstream ss;
  write_sweep_csv(ss, rows);
  const auto back = read_sweep_csv(ss);
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].beta, rows[i].beta);
    EXPECT_EQ(back[i].hidden, rows[i].hidden);
    EXPECT_EQ(back[i].seed, rows[i].seed);
    EXPECT_EQ(back[i].mse, rows[i].mse);
    EXPECT_EQ(back[i].coverage, rows[i].coverage);
    EXPECT_EQ(back[i].distinctness, rows[i].distinctness);
    EXPECT_EQ(back[i].minPurity, rows[i].minPurity);
  }
  EXPECT_TRUE(back[2].error.has_value());
}

TEST(Sweep, PenaltyDoesNotLowerCoverage) {
  SweepSpec spec;
  spec.betas = {0.0, 0.1};
  spec.hiddenCounts = {20};
  spec.seedsPerCell = 10;
  const auto r = run_sweep(spec);
  ASSERT_EQ(r.cells.size(), 2u);
  EXPECT_GE(r.cells[1].meanCoverage, r.cells[0].meanCoverage);
}

TEST(Sweep, MoreNodesDoNotLowerCoverage) {
  SweepSpec spec;
  spec.betas = {0.1};
  spec.hiddenCounts = {8, 32};
  spec.seedsPerCell = 10;
  const auto r = run_sweep(spec);
  ASSERT_EQ(r.cells.size(), 2u);
  EXPECT_GE(r.cells[1].meanCoverage, r.cells[0].meanCoverage);
}
