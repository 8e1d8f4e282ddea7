#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vnd/benchmark.hpp"
#include "vnd/error.hpp"
#include "vnd/report.hpp"
#include "vnd/server.hpp"
#include "vnd/sweep.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitDiverged = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainFlags {
  std::size_t nodes = 20;
  std::size_t iterations = 10000;
  double beta = 0.1;
  double lr = 0.01;
  std::size_t batch = 32;
  std::uint64_t seed = 1;

  void add(CLI::App& app) {
    app.add_option("--nodes", nodes, "Hidden nodes")->capture_default_str();
    app.add_option("--iterations", iterations, "Training iterations")->capture_default_str();
    app.add_option("--beta", beta, "Specialization penalty weight")->capture_default_str();
    app.add_option("--lr", lr, "RMSprop learning rate")->capture_default_str();
    app.add_option("--batch", batch, "Mini-batch size")->capture_default_str();
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
  }

  vnd::TrainConfig config() const {
    vnd::TrainConfig cfg;
    cfg.hiddenNodes = nodes;
    cfg.iterations = iterations;
    cfg.beta = beta;
    cfg.learningRate = lr;
    cfg.batchSize = batch;
    cfg.seed = seed;
    return cfg;
  }
};

struct AnalyzeFlags {
  std::string input;
  std::string target;
  std::optional<std::string> threshold;
  std::string out;
  std::string format = "json";
  std::optional<std::string> benchmark;
  std::string sampling = "grid";
  std::optional<std::size_t> samples;
  std::vector<std::string> exclude;
  std::vector<std::string> fork;
  std::vector<std::string> logScale;
  bool timestamp = false;
  std::size_t jobs = 1;
  TrainFlags train;
};

struct SweepFlags {
  std::vector<double> betas{0.0, 0.1, 0.5};
  std::vector<std::size_t> hidden{8, 20};
  std::size_t seeds = 10;
  std::uint64_t baseSeed = 1;
  std::string out;
  std::size_t jobs = 1;
  std::string benchmark = "three-var";
  std::string sampling = "grid";
  std::optional<std::size_t> samples;
  TrainFlags train;
};

struct ServeFlags {
  std::string host = "127.0.0.1";
  std::optional<int> port;
  std::string staticDir;
};

// Run time in UTC, or SOURCE_DATE_EPOCH when set, so that reports stay
// reproducible unless a timestamp is requested.
std::optional<std::string> generated_at(bool requested) {
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  std::time_t t = 0;
  if (epoch != nullptr && *epoch != '\0') {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else if (requested) {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  } else {
    return std::nullopt;
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw vnd::Error(vnd::ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

vnd::TrainConfig checked(const TrainFlags& flags) {
  vnd::TrainConfig cfg = flags.config();
  try {
    cfg.validate();
  } catch (const vnd::Error& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

vnd::Dataset load_table(const AnalyzeFlags& f) {
  const vnd::RawTable table = vnd::load_csv_file(f.input);
  auto specs = vnd::infer_specs(table);
  for (const auto& name : f.fork) vnd::fork_variable(specs, table, name);
  for (const auto& name : f.exclude) vnd::set_enabled(specs, name, false);
  for (const auto& name : f.logScale) vnd::set_log_scale(specs, name, true);
  vnd::set_target(specs, f.target);
  const vnd::Dataset base = vnd::normalize(table, specs);
  const auto choice = vnd::ThresholdChoice::parse(f.threshold.value_or("mid"));
  return base.withThreshold(choice.resolve(base));
}

int run_analyze(const AnalyzeFlags& f) {
  if (f.format != "json" && f.format != "text") throw UsageError("--format must be json or text");
  if (!f.benchmark && (f.input.empty() || f.target.empty())) {
    throw UsageError("--input and --target are required unless --benchmark is given");
  }
  if (f.threshold) {
    try {
      vnd::ThresholdChoice::parse(*f.threshold);
    } catch (const vnd::Error& e) {
      throw UsageError(e.what());
    }
  }
  const vnd::TrainConfig cfg = checked(f.train);

  std::optional<vnd::Dataset> data;
  std::optional<vnd::BenchmarkKind> kind;
  if (f.benchmark) {
    vnd::BenchmarkSpec spec;
    try {
      kind = vnd::parse_benchmark_kind(*f.benchmark);
      spec = *kind == vnd::BenchmarkKind::TwoVarXor ? vnd::BenchmarkSpec::twoVarXor(f.train.seed)
                                                     : vnd::BenchmarkSpec::threeVar(f.train.seed);
      spec.sampling = vnd::parse_sampling(f.sampling);
    } catch (const vnd::Error& e) {
      throw UsageError(e.what());
    }
    if (f.samples) spec.samples = *f.samples;
    data = vnd::generate(spec);
    if (f.threshold) {
      data = data->withThreshold(vnd::ThresholdChoice::parse(*f.threshold).resolve(*data));
    }
  } else {
    data = load_table(f);
  }
  if (cfg.batchSize > data->size()) {
    throw vnd::Error(vnd::ErrorCode::InvalidArgument, "--batch exceeds the number of items");
  }

  const vnd::AnalysisModel model = vnd::analyze(*data, cfg);
  std::optional<vnd::RecoveryReport> recovery;
  if (kind && !model.nodes.empty()) {
    recovery = vnd::pattern_recovery(model.result.network, *data, model.nodes, vnd::benchmark_maxima(*kind), {});
  }
  const vnd::json report = vnd::build_report(*data, model, {}, recovery, generated_at(f.timestamp));
  write_output(f.out, f.format == "json" ? report.dump(2) + "\n" : vnd::render_text(report));
  return 0;
}

int run_sweep_cmd(const SweepFlags& f) {
  if (f.betas.empty() || f.hidden.empty() || f.seeds == 0) throw UsageError("sweep grid must not be empty");
  vnd::SweepSpec spec;
  spec.betas = f.betas;
  spec.hiddenCounts = f.hidden;
  spec.seedsPerCell = f.seeds;
  spec.baseSeed = f.baseSeed;
  spec.jobs = f.jobs == 0 ? 1 : f.jobs;
  spec.train = f.train.config();
  try {
    const auto kind = vnd::parse_benchmark_kind(f.benchmark);
    spec.benchmark = kind == vnd::BenchmarkKind::TwoVarXor ? vnd::BenchmarkSpec::twoVarXor()
                                                            : vnd::BenchmarkSpec::threeVar();
    spec.benchmark.sampling = vnd::parse_sampling(f.sampling);
    for (double b : f.betas) {
      vnd::TrainConfig probe = spec.train;
      probe.beta = b;
      for (std::size_t h : f.hidden) {
        probe.hiddenNodes = h;
        probe.validate();
      }
    }
  } catch (const vnd::Error& e) {
    throw UsageError(e.what());
  }
  if (f.samples) spec.benchmark.samples = *f.samples;

  const vnd::SweepResult result = vnd::run_sweep(spec);
  std::ostringstream csv;
  vnd::write_sweep_csv(csv, result.rows);
  write_output(f.out, csv.str());
  for (const auto& cell : result.cells) {
    std::cerr << "beta=" << cell.beta << " hidden=" << cell.hidden << " runs=" << cell.runs
              << " failures=" << cell.failures << " meanCoverage=" << cell.meanCoverage
              << " meanMse=" << cell.meanMse << "\n";
  }
  return 0;
}

int run_serve(const ServeFlags& f) {
  vnd::ServerConfig cfg = vnd::ServerConfig::fromEnvironment();
  cfg.host = f.host;
  if (f.port) cfg.port = *f.port;
  cfg.staticDir = f.staticDir;
  vnd::Server server(cfg);
  const int port = server.bind();
  if (port < 0) {
    std::cerr << "cannot bind " << cfg.host << ":" << cfg.port << "\n";
    return kExitData;
  }
  std::cerr << "listening on http://" << cfg.host << ":" << port << "\n";
  return server.listen() ? 0 : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decomposes a trained one-hidden-layer network into per-node patterns."};
  app.set_version_flag("--version", std::string(vnd::kToolVersion));
  app.require_subcommand(1);

  AnalyzeFlags analyze;
  auto* a = app.add_subcommand("analyze", "Train on a CSV table or a synthetic benchmark and emit a report");
  a->add_option("--input", analyze.input, "CSV file");
  a->add_option("--target", analyze.target, "Target column");
  a->add_option("--threshold", analyze.threshold, "mid, median, or a value in target units");
  a->add_option("--out", analyze.out, "Output file (default stdout)");
  a->add_option("--format", analyze.format, "json or text")->capture_default_str();
  a->add_option("--benchmark", analyze.benchmark, "three-var or xor2");
  a->add_option("--sampling", analyze.sampling, "Benchmark sampling: grid, lattice or uniform")->capture_default_str();
  a->add_option("--samples", analyze.samples, "Benchmark sample count");
  a->add_option("--exclude", analyze.exclude, "Disable an input column (repeatable)");
  a->add_option("--fork", analyze.fork, "Split a categorical column into binary columns (repeatable)");
  a->add_option("--log", analyze.logScale, "Log-scale a numeric column (repeatable)");
  a->add_flag("--timestamp", analyze.timestamp, "Record the generation time in the report");
  a->add_option("--jobs", analyze.jobs, "Worker threads (accepted for symmetry with sweep)");
  analyze.train.add(*a);

  SweepFlags sweep;
  auto* s = app.add_subcommand("sweep", "Run the benchmark over a beta x hidden-node grid and write CSV");
  s->add_option("--betas", sweep.betas, "Penalty weights")->delimiter(',');
  s->add_option("--hidden", sweep.hidden, "Hidden node counts")->delimiter(',');
  s->add_option("--seeds", sweep.seeds, "Seeds per cell")->capture_default_str();
  s->add_option("--base-seed", sweep.baseSeed, "First seed")->capture_default_str();
  s->add_option("--out", sweep.out, "Output CSV (default stdout)");
  s->add_option("--jobs", sweep.jobs, "Worker threads")->capture_default_str();
  s->add_option("--benchmark", sweep.benchmark, "three-var or xor2")->capture_default_str();
  s->add_option("--sampling", sweep.sampling, "grid, lattice or uniform")->capture_default_str();
  s->add_option("--samples", sweep.samples, "Benchmark sample count");
  sweep.train.add(*s);
  s->get_option("--nodes")->description("Ignored; use --hidden");
  s->get_option("--beta")->description("Ignored; use --betas");
  s->get_option("--seed")->description("Ignored; use --base-seed");

  ServeFlags serve;
  auto* v = app.add_subcommand("serve", "Start the HTTP API");
  v->add_option("--host", serve.host, "Bind address")->capture_default_str();
  v->add_option("--port", serve.port, "Port (default VND_PORT or 8080)");
  v->add_option("--static", serve.staticDir, "Directory of UI files to serve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*a) return run_analyze(analyze);
    if (*s) return run_sweep_cmd(sweep);
    return run_serve(serve);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* sub = *a ? a : (*s ? s : v);
    std::cerr << sub->help();
    return kExitUsage;
  } catch (const vnd::TrainingDiverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDiverged;
  } catch (const vnd::CsvError& e) {
    std::cerr << "error: line " << e.line() << ": " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
