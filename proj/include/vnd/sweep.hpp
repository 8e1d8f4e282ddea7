#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vnd/benchmark.hpp"
#include "vnd/recovery.hpp"
#include "vnd/train.hpp"

namespace vnd {

struct SweepSpec {
  std::vector<double> betas{0.0, 0.1, 0.5};
  std::vector<std::size_t> hiddenCounts{8, 20};
  std::size_t seedsPerCell = 10;
  std::uint64_t baseSeed = 1;
  RecoveryCriteria recoveryCriteria;
  BenchmarkSpec benchmark = BenchmarkSpec::threeVar();
  /// Template for every run; hiddenNodes, beta and seed are overridden.
  TrainConfig train;
  std::size_t jobs = 1;
};

struct SweepRow {
  double beta = 0.0;
  std::size_t hidden = 0;
  std::uint64_t seed = 0;
  double mse = 0.0;
  double coverage = 0.0;
  std::size_t distinctness = 0;
  double minPurity = 0.0;
  std::size_t specializedPatterns = 0;
  std::optional<std::string> error;
};

struct SweepCell {
  double beta = 0.0;
  std::size_t hidden = 0;
  std::size_t runs = 0;
  std::size_t failures = 0;
  double meanCoverage = 0.0;
  double meanMse = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;   // beta-major, then hidden, then seed
  std::vector<SweepCell> cells;
};

/// Trains and evaluates one benchmark run.
SweepRow run_single(const Dataset& data, BenchmarkKind kind, const TrainConfig& cfg, const RecoveryCriteria& criteria);

/// Runs every (beta, hidden, seed) combination. A failing run is recorded
/// in its row and does not stop the sweep. Rows come back in grid order
/// regardless of `jobs`.
SweepResult run_sweep(const SweepSpec& spec);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

}  // namespace vnd
