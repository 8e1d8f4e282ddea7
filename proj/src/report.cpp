#include "vnd/report.hpp"

#include <cstdio>
#include <sstream>

#include "vnd/error.hpp"

namespace vnd {

ThresholdChoice ThresholdChoice::parse(const std::string& text) {
  if (text == "mid") return {Mode::Mid, 0.0};
  if (text == "median") return {Mode::Median, 0.0};
  if (auto v = parse_real(text)) return {Mode::Value, *v};
  throw Error(ErrorCode::InvalidArgument, "threshold must be a number, 'mid' or 'median'");
}

double ThresholdChoice::resolve(const Dataset& data) const {
  switch (mode) {
    case Mode::Mid: return default_threshold(data.target());
    case Mode::Median: return median_threshold(data.target());
    case Mode::Value: {
      const VariableSpec& spec = data.targetSpec();
      const double scaled = spec.kind == VariableKind::Numeric ? normalize_value(spec, value) : value;
      if (!(scaled > 0.0 && scaled < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "threshold lies outside the target range");
      }
      return scaled;
    }
  }
  return 0.5;
}

std::string ThresholdChoice::describe() const {
  switch (mode) {
    case Mode::Mid: return "mid";
    case Mode::Median: return "median";
    case Mode::Value: break;
  }
  std::ostringstream os;
  os << value;
  return os.str();
}

AnalysisModel analyze(const Dataset& data, const TrainConfig& cfg, const TrainObserver& observer) {
  AnalysisModel model;
  model.config = cfg;
  model.result = train(data, cfg, observer);
  if (model.result.network.positiveNodeCount() > 0) model.nodes = contributions_all(model.result.network, data);
  return model;
}

std::vector<NodeCard> model_cards(const AnalysisModel& model, const Dataset& data, const DisplayOptions& options) {
  if (model.nodes.empty()) return {};
  return build_cards(model.result.network, data, model.nodes, options);
}

json dataset_summary(const Dataset& data) {
  const VariableSpec& target = data.targetSpec();
  json specs = json::array();
  for (const auto& s : data.specs()) specs.push_back(to_json(s));
  const double raw = target.kind == VariableKind::Numeric ? denormalize_value(target, data.threshold()) : data.threshold();
  return {{"items", data.size()},
          {"inputs", data.inputNames()},
          {"target", target.name},
          {"threshold", data.threshold()},
          {"thresholdRaw", raw},
          {"highCount", data.highCount()},
          {"highFraction", data.size() ? static_cast<double>(data.highCount()) / static_cast<double>(data.size()) : 0.0},
          {"variables", specs}};
}

json build_report(const Dataset& data, const AnalysisModel& model, const DisplayOptions& options,
                  const std::optional<RecoveryReport>& recovery, const std::optional<std::string>& generatedAt) {
  const auto cards = model_cards(model, data, options);
  json summary = json::array();
  for (const auto& card : cards) {
    json top = json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(5, card.ranking.visible.size()); ++i) {
      const std::size_t k = card.ranking.visible[i];
      top.push_back({{"name", data.inputNames()[k]}, {"rank", card.ranking.ranks[k]}, {"weight", card.ranking.weights[k]}});
    }
    summary.push_back({{"node", "Node " + std::to_string(card.nodeIndex)},
                       {"nodeIndex", card.nodeIndex},
                       {"score", card.displayScore},
                       {"weight", card.outputWeight},
                       {"highCoverage", card.coverage.high},
                       {"lowCoverage", card.coverage.low},
                       {"topVariables", top}});
  }
  json report{{"toolVersion", kToolVersion},
              {"generatedAt", generatedAt ? json(*generatedAt) : json(nullptr)},
              {"datasetSummary", dataset_summary(data)},
              {"trainConfig", to_json(model.config)},
              {"lossCurve", to_json(model.result.lossCurve)},
              {"finalMse", model.result.finalMse},
              {"network", to_json(model.result.network)},
              {"nodeSummary", summary},
              {"nodeCards", cards_to_json(cards, data, options)}};
  report["recovery"] = recovery ? to_json(*recovery) : json(nullptr);
  return report;
}

std::string render_text(const json& report) {
  std::ostringstream os;
  char buf[256];
  const auto& ds = report.at("datasetSummary");
  std::snprintf(buf, sizeof buf, "target %s, threshold %.4g (scaled %.3f), %zu of %zu items high\n",
                ds.at("target").get<std::string>().c_str(), ds.at("thresholdRaw").get<double>(),
                ds.at("threshold").get<double>(), ds.at("highCount").get<std::size_t>(), ds.at("items").get<std::size_t>());
  os << buf;
  std::snprintf(buf, sizeof buf, "training mse %.6f after %zu steps\n", report.at("finalMse").get<double>(),
                report.at("trainConfig").at("iterations").get<std::size_t>());
  os << buf;
  for (const auto& node : report.at("nodeSummary")) {
    std::snprintf(buf, sizeof buf, "\n%s  score %.2f  v %.3f  high %.0f%%  low %.0f%%\n",
                  node.at("node").get<std::string>().c_str(), node.at("score").get<double>(),
                  node.at("weight").get<double>(), 100.0 * node.at("highCoverage").get<double>(),
                  100.0 * node.at("lowCoverage").get<double>());
    os << buf;
    for (const auto& var : node.at("topVariables")) {
      std::snprintf(buf, sizeof buf, "  %-24s rank %.3f  [w %+.3f]\n", var.at("name").get<std::string>().c_str(),
                    var.at("rank").get<double>(), var.at("weight").get<double>());
      os << buf;
    }
  }
  if (report.contains("recovery") && !report["recovery"].is_null()) {
    const auto& r = report["recovery"];
    std::snprintf(buf, sizeof buf, "\nrecovery: coverage %.3f, distinctness %zu of %zu maxima, min purity %.3f\n",
                  r.at("coverage").get<double>(), r.at("distinctness").get<std::size_t>(),
                  r.at("patternCount").get<std::size_t>(), r.at("minPurity").get<double>());
    os << buf;
  }
  return os.str();
}

}  // namespace vnd
