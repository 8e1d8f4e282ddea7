#pragma once

#include <optional>
#include <string>
#include <variant>

#include "vnd/json_io.hpp"

namespace vnd {

inline constexpr const char* kToolVersion = "0.1.0";

/// "mid", "median" or a value in raw target units.
struct ThresholdChoice {
  enum class Mode { Mid, Median, Value } mode = Mode::Mid;
  double value = 0.0;

  static ThresholdChoice parse(const std::string& text);
  /// Resolves to a normalized threshold in (0,1).
  double resolve(const Dataset& data) const;
  std::string describe() const;
};

/// Trained model plus its cached decomposition.
struct AnalysisModel {
  TrainConfig config;
  TrainResult result;
  std::vector<NodeContribution> nodes;  // empty when the net has no positive node
};

AnalysisModel analyze(const Dataset& data, const TrainConfig& cfg, const TrainObserver& observer = {});

/// Cards of a model; empty when the network has no positive node.
std::vector<NodeCard> model_cards(const AnalysisModel& model, const Dataset& data, const DisplayOptions& options);

json dataset_summary(const Dataset& data);

/// Self-contained report; re-renderable without the source table.
json build_report(const Dataset& data, const AnalysisModel& model, const DisplayOptions& options,
                  const std::optional<RecoveryReport>& recovery, const std::optional<std::string>& generatedAt);

/// Plain-text rendering of a report: one block per node card with its
/// score, coverage and top five variables.
std::string render_text(const json& report);

}  // namespace vnd
