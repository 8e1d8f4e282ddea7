#pragma once

#include <json.hpp>

#include "vnd/dataset.hpp"
#include "vnd/range_filter.hpp"
#include "vnd/recovery.hpp"
#include "vnd/train.hpp"
#include "vnd/views.hpp"

namespace vnd {

using json = nlohmann::json;

json to_json(const VariableSpec& spec);
VariableSpec spec_from_json(const json& j);

/// Per-variable listing with a preview histogram of the scaled values.
json variable_summary(const RawTable& table, const std::vector<VariableSpec>& specs, std::size_t bins = 20);

/// {specs, inputs, rows, target, threshold}; rows are row-major arrays.
json dataset_to_json(const Dataset& data);
Dataset dataset_from_json(const json& j);

json to_json(const TrainConfig& cfg);
/// Missing keys keep their defaults.
TrainConfig train_config_from_json(const json& j, TrainConfig base = {});

json to_json(const Network& net);
Network network_from_json(const json& j);
/// {W, b, v, config, seed}
json network_export(const Network& net, const TrainConfig& cfg);

json to_json(const std::vector<LossPoint>& curve);

json to_json(const VariableRanking& ranking, const Dataset& data);
json to_json(const StackedHistogram& hist, const Dataset& data);
json to_json(const NodeCard& card, const Dataset& data, bool coverageMode = false);
json cards_to_json(const std::vector<NodeCard>& cards, const Dataset& data, const DisplayOptions& options,
                   bool coverageMode = false);
json to_json(const PcpPayload& pcp);

RangeFilter range_filter_from_json(const json& j, const Dataset& data);
json to_json(const RangeFilter& filter);
json to_json(const FilterResult& result);

json to_json(const RecoveryReport& report);

/// Bin edges of an equal-width histogram over [0,1].
json bin_edges(std::size_t bins);

}  // namespace vnd
