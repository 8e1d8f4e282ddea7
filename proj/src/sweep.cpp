#include "vnd/sweep.hpp"

#include <atomic>
#include <iomanip>
#include <sstream>
#include <thread>

#include "vnd/csv.hpp"
#include "vnd/error.hpp"

namespace vnd {

SweepRow run_single(const Dataset& data, BenchmarkKind kind, const TrainConfig& cfg, const RecoveryCriteria& criteria) {
  SweepRow row;
  row.beta = cfg.beta;
  row.hidden = cfg.hiddenNodes;
  row.seed = cfg.seed;
  try {
    const TrainResult result = train(data, cfg);
    row.mse = result.finalMse;
    if (result.network.positiveNodeCount() == 0) return row;
    const auto nodes = contributions_all(result.network, data);
    const auto report = pattern_recovery(result.network, data, nodes, benchmark_maxima(kind), criteria);
    row.coverage = report.coverage;
    row.distinctness = report.distinctness;
    row.minPurity = report.minPurity;
    row.specializedPatterns = report.specializedPatterns;
  } catch (const Error& e) {
    row.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  return row;
}

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.betas.empty() || spec.hiddenCounts.empty() || spec.seedsPerCell == 0) {
    throw Error(ErrorCode::InvalidArgument, "sweep grid is empty");
  }
  spec.recoveryCriteria.validate();
  const Dataset data = generate(spec.benchmark);

  std::vector<TrainConfig> configs;
  for (double beta : spec.betas) {
    for (std::size_t hidden : spec.hiddenCounts) {
      for (std::size_t s = 0; s < spec.seedsPerCell; ++s) {
        TrainConfig cfg = spec.train;
        cfg.beta = beta;
        cfg.hiddenNodes = hidden;
        cfg.seed = spec.baseSeed + s;
        configs.push_back(cfg);
      }
    }
  }

  SweepResult result;
  result.rows.resize(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      result.rows[i] = run_single(data, spec.benchmark.kind, configs[i], spec.recoveryCriteria);
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(spec.jobs, configs.size()));
  std::vector<std::jthread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (std::size_t start = 0; start < result.rows.size(); start += spec.seedsPerCell) {
    SweepCell cell;
    cell.beta = result.rows[start].beta;
    cell.hidden = result.rows[start].hidden;
    for (std::size_t i = start; i < start + spec.seedsPerCell; ++i) {
      const auto& row = result.rows[i];
      if (row.error) {
        ++cell.failures;
        continue;
      }
      ++cell.runs;
      cell.meanCoverage += row.coverage;
      cell.meanMse += row.mse;
    }
    if (cell.runs > 0) {
      cell.meanCoverage /= static_cast<double>(cell.runs);
      cell.meanMse /= static_cast<double>(cell.runs);
    }
    result.cells.push_back(cell);
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "beta,hidden,seed,mse,coverage,distinctness,minPurity\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.beta << ',' << r.hidden << ',' << r.seed << ',';
    if (r.error) {
      out << "NA,NA,NA,NA\n";
      continue;
    }
    out << r.mse << ',' << r.coverage << ',' << r.distinctness << ',' << r.minPurity << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  const RawTable table = load_csv(in);
  const std::vector<std::string> expected{"beta", "hidden", "seed", "mse", "coverage", "distinctness", "minPurity"};
  if (table.columnNames != expected) throw Error(ErrorCode::MalformedCsv, "unexpected sweep CSV header");
  std::vector<SweepRow> rows;
  for (const auto& cells : table.cells) {
    auto num = [&](std::size_t c) { return cells[c] ? parse_real(*cells[c]) : std::nullopt; };
    SweepRow row;
    row.beta = num(0).value_or(0.0);
    row.hidden = static_cast<std::size_t>(num(1).value_or(0.0));
    row.seed = cells[2] ? std::stoull(*cells[2]) : 0;
    if (!num(3)) {
      row.error = "failed";
    } else {
      row.mse = *num(3);
      row.coverage = num(4).value_or(0.0);
      row.distinctness = static_cast<std::size_t>(num(5).value_or(0.0));
      row.minPurity = num(6).value_or(0.0);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace vnd
