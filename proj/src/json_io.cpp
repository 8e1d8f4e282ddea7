#include "vnd/json_io.hpp"

#include "vnd/error.hpp"

namespace vnd {
namespace {

VariableKind kind_from_string(const std::string& s) {
  if (s == "numeric") return VariableKind::Numeric;
  if (s == "categorical") return VariableKind::Categorical;
  if (s == "binaryFork") return VariableKind::BinaryFork;
  throw Error(ErrorCode::InvalidArgument, "unknown variable kind '" + s + "'");
}

json matrix(const std::vector<double>& flat, std::size_t rows, std::size_t cols) {
  json out = json::array();
  for (std::size_t r = 0; r < rows; ++r) {
    out.push_back(std::vector<double>(flat.begin() + static_cast<std::ptrdiff_t>(r * cols),
                                      flat.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols)));
  }
  return out;
}

std::vector<double> flatten(const json& rows, std::size_t expectedCols) {
  std::vector<double> flat;
  for (const auto& row : rows) {
    if (row.size() != expectedCols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix in JSON");
    for (const auto& v : row) flat.push_back(v.get<double>());
  }
  return flat;
}

}  // namespace

json bin_edges(std::size_t bins) {
  json edges = json::array();
  for (std::size_t i = 0; i <= bins; ++i) edges.push_back(static_cast<double>(i) / static_cast<double>(bins));
  return edges;
}

json to_json(const VariableSpec& s) {
  json j{{"name", s.name},
         {"kind", to_string(s.kind)},
         {"enabled", s.enabled},
         {"isTarget", s.isTarget},
         {"logScale", s.logScale},
         {"scaleMin", s.scaleMin},
         {"scaleMax", s.scaleMax},
         {"categories", s.categories},
         {"degenerate", s.degenerate},
         {"categoricalHint", s.categoricalHint}};
  j["sourceVariable"] = s.sourceVariable ? json(*s.sourceVariable) : json(nullptr);
  j["forkCategory"] = s.forkCategory ? json(*s.forkCategory) : json(nullptr);
  return j;
}

VariableSpec spec_from_json(const json& j) {
  VariableSpec s;
  s.name = j.at("name").get<std::string>();
  s.kind = kind_from_string(j.at("kind").get<std::string>());
  s.enabled = j.value("enabled", true);
  s.isTarget = j.value("isTarget", false);
  s.logScale = j.value("logScale", false);
  s.scaleMin = j.value("scaleMin", 0.0);
  s.scaleMax = j.value("scaleMax", 0.0);
  s.categories = j.value("categories", std::vector<std::string>{});
  s.degenerate = j.value("degenerate", false);
  s.categoricalHint = j.value("categoricalHint", false);
  if (j.contains("sourceVariable") && !j["sourceVariable"].is_null()) s.sourceVariable = j["sourceVariable"].get<std::string>();
  if (j.contains("forkCategory") && !j["forkCategory"].is_null()) s.forkCategory = j["forkCategory"].get<std::string>();
  return s;
}

json variable_summary(const RawTable& table, const std::vector<VariableSpec>& specs, std::size_t bins) {
  json vars = json::array();
  for (const auto& spec : specs) {
    json j = to_json(spec);
    const auto column = table.columnIndex(spec.sourceVariable ? *spec.sourceVariable : spec.name);
    std::size_t missing = 0;
    std::vector<double> scaled;
    if (column) {
      // Reuse the normalizer on a single-column view of this spec.
      for (const auto& row : table.cells) {
        const Cell& cell = row[*column];
        if (!cell) ++missing;
        double v = 0.0;
        if (spec.kind == VariableKind::Numeric) {
          v = cell ? normalize_value(spec, parse_real(*cell).value_or(spec.scaleMin)) : 0.0;
        } else if (spec.kind == VariableKind::BinaryFork) {
          v = (cell ? *cell : std::string(kMissingCategory)) == *spec.forkCategory ? 1.0 : 0.0;
        } else if (spec.categories.size() > 1) {
          const std::string label = cell ? *cell : std::string(kMissingCategory);
          auto it = std::lower_bound(spec.categories.begin(), spec.categories.end(), label);
          v = static_cast<double>(it - spec.categories.begin()) / static_cast<double>(spec.categories.size() - 1);
        }
        scaled.push_back(v);
      }
    }
    j["missing"] = missing;
    j["histogram"] = variable_histogram(scaled, bins);
    j["binEdges"] = bin_edges(bins);
    vars.push_back(std::move(j));
  }
  return vars;
}

json dataset_to_json(const Dataset& data) {
  json specs = json::array();
  for (const auto& s : data.specs()) specs.push_back(to_json(s));
  return {{"specs", specs},
          {"inputs", data.inputNames()},
          {"rows", matrix(data.rows(), data.size(), data.inputCount())},
          {"target", data.target()},
          {"threshold", data.threshold()}};
}

Dataset dataset_from_json(const json& j) {
  std::vector<VariableSpec> specs;
  for (const auto& s : j.at("specs")) specs.push_back(spec_from_json(s));
  auto inputs = j.at("inputs").get<std::vector<std::string>>();
  auto rows = flatten(j.at("rows"), inputs.size());
  return Dataset(std::move(specs), std::move(inputs), std::move(rows), j.at("target").get<std::vector<double>>(),
                 j.at("threshold").get<double>());
}

json to_json(const TrainConfig& c) {
  return {{"hiddenNodes", c.hiddenNodes}, {"iterations", c.iterations},   {"beta", c.beta},
          {"learningRate", c.learningRate}, {"batchSize", c.batchSize},  {"rmspropDecay", c.rmspropDecay},
          {"rmspropEpsilon", c.rmspropEpsilon}, {"seed", c.seed}};
}

TrainConfig train_config_from_json(const json& j, TrainConfig c) {
  try {
    c.hiddenNodes = j.value("hiddenNodes", c.hiddenNodes);
    c.iterations = j.value("iterations", c.iterations);
    c.beta = j.value("beta", c.beta);
    c.learningRate = j.value("learningRate", c.learningRate);
    c.batchSize = j.value("batchSize", c.batchSize);
    c.rmspropDecay = j.value("rmspropDecay", c.rmspropDecay);
    c.rmspropEpsilon = j.value("rmspropEpsilon", c.rmspropEpsilon);
    c.seed = j.value("seed", c.seed);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad training config: ") + e.what());
  }
  return c;
}

json to_json(const Network& net) {
  return {{"W", matrix(net.W, net.hidden, net.inputs)}, {"b", net.b}, {"v", net.v}};
}

Network network_from_json(const json& j) {
  const auto& W = j.at("W");
  const std::size_t hidden = W.size();
  const std::size_t inputs = hidden ? W[0].size() : 0;
  Network net(inputs, hidden);
  net.W = flatten(W, inputs);
  net.b = j.at("b").get<std::vector<double>>();
  net.v = j.at("v").get<std::vector<double>>();
  if (net.b.size() != hidden || net.v.size() != hidden) {
    throw Error(ErrorCode::DimensionMismatch, "bias/output weight length differs from hidden count");
  }
  return net;
}

json network_export(const Network& net, const TrainConfig& cfg) {
  json j = to_json(net);
  j["config"] = to_json(cfg);
  j["seed"] = cfg.seed;
  return j;
}

json to_json(const std::vector<LossPoint>& curve) {
  json out = json::array();
  for (const auto& p : curve) out.push_back({{"step", p.step}, {"loss", p.loss}, {"mse", p.mse}});
  return out;
}

json to_json(const VariableRanking& r, const Dataset& data) {
  json vars = json::array();
  for (std::size_t k : r.order) {
    vars.push_back({{"index", k},
                    {"name", data.inputNames()[k]},
                    {"rank", r.ranks[k]},
                    {"weight", r.weights[k]},
                    {"meanValue", r.meanValues[k]}});
  }
  return {{"order", r.order}, {"visible", r.visible}, {"variables", vars}};
}

json to_json(const StackedHistogram& h, const Dataset& data) {
  return {{"variableIndex", h.variableIndex},
          {"name", data.inputNames()[h.variableIndex]},
          {"inputBins", h.inputBins},
          {"targetBins", h.targetBins},
          {"weights", matrix(h.weights, h.inputBins, h.targetBins)},
          {"inputEdges", bin_edges(h.inputBins)},
          {"targetEdges", h.targetBins == 2 ? json::array({0.0, data.threshold(), 1.0}) : bin_edges(h.targetBins)}};
}

json to_json(const NodeCard& c, const Dataset& data, bool coverageMode) {
  json stacked = json::array();
  for (const auto& h : c.stackedHistograms) stacked.push_back(to_json(h, data));
  return {{"nodeIndex", c.nodeIndex},
          {"weight", c.outputWeight},
          {"meanActivation", c.meanActivation},
          {"meanContribution", c.meanContribution},
          {"displayScore", c.displayScore},
          {"affectedHigh", c.affectedHigh},
          {"affectedLow", c.affectedLow},
          {"highCoverage", c.coverage.high},
          {"lowCoverage", c.coverage.low},
          {"targetHistogram", c.targetHistogram},
          {"coverageHistogram", c.coverageHistogram},
          {"header", {{"mode", coverageMode ? "coverage" : "target"},
                      {"histogram", coverageMode ? c.coverageHistogram : c.targetHistogram}}},
          {"ranking", to_json(c.ranking, data)},
          {"stackedHistograms", stacked}};
}

json cards_to_json(const std::vector<NodeCard>& cards, const Dataset& data, const DisplayOptions& options,
                   bool coverageMode) {
  json list = json::array();
  for (const auto& c : cards) list.push_back(to_json(c, data, coverageMode));
  return {{"inputBins", options.inputBins},
          {"targetBins", options.targetBins},
          {"coverageBins", options.coverageBins},
          {"coverageMode", coverageMode ? "coverage" : "target"},
          {"threshold", data.threshold()},
          {"targetEdges", bin_edges(options.targetBins)},
          {"nodes", list}};
}

json to_json(const PcpPayload& p) {
  json items = json::array();
  const std::size_t cols = p.columns.size();
  for (std::size_t n = 0; n < p.target.size(); ++n) {
    items.push_back({{"values", std::vector<double>(p.values.begin() + static_cast<std::ptrdiff_t>(n * cols),
                                                    p.values.begin() + static_cast<std::ptrdiff_t>((n + 1) * cols))},
                     {"contributing", static_cast<bool>(p.contributing[n])},
                     {"contribution", p.contributions[n]},
                     {"target", p.target[n]}});
  }
  return {{"nodeIndex", p.nodeIndex}, {"columns", p.columns}, {"names", p.names}, {"items", items}};
}

RangeFilter range_filter_from_json(const json& j, const Dataset& data) {
  RangeFilter f;
  try {
    f.inputBins = j.value("inputBins", f.inputBins);
    for (const auto& sel : j.at("selections")) {
      RangeSelection s;
      if (sel.contains("variable") && sel["variable"].is_string()) {
        const auto& names = data.inputNames();
        const auto name = sel["variable"].get<std::string>();
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw Error(ErrorCode::UnknownVariable, "unknown input '" + name + "'");
        s.variableIndex = static_cast<std::size_t>(it - names.begin());
      } else {
        s.variableIndex = sel.at("variableIndex").get<std::size_t>();
      }
      for (const auto& b : sel.at("bins")) s.bins.insert(b.get<std::size_t>());
      f.selections.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad filter: ") + e.what());
  }
  return f;
}

json to_json(const RangeFilter& f) {
  json sels = json::array();
  for (const auto& s : f.selections) sels.push_back({{"variableIndex", s.variableIndex}, {"bins", s.bins}});
  return {{"inputBins", f.inputBins}, {"selections", sels}};
}

json to_json(const FilterResult& r) {
  return {{"matchedCount", r.matchedCount},
          {"matchedHighCount", r.matchedHighCount},
          {"totalCount", r.totalCount},
          {"totalHighCount", r.totalHighCount},
          {"highRecall", r.highRecall},
          {"targetHistogram", r.targetHistogram},
          {"targetEdges", bin_edges(r.targetHistogram.size())},
          {"fisherP", r.fisherP}};
}

json to_json(const RecoveryReport& r) {
  json nodes = json::array();
  for (const auto& n : r.nodes) {
    nodes.push_back({{"nodeIndex", n.nodeIndex}, {"mass", n.mass}, {"purity", n.purity}, {"patternShare", n.patternShare}});
  }
  return {{"coverage", r.coverage},
          {"distinctness", r.distinctness},
          {"patternCount", r.patternCount},
          {"maximumOwner", r.maximumOwner},
          {"minPurity", r.minPurity},
          {"specializedPatterns", r.specializedPatterns},
          {"nodes", nodes}};
}

}  // namespace vnd
