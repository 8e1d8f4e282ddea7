#pragma once

#include <string>
#include <vector>

#include "vnd/contribution.hpp"
#include "vnd/ranking.hpp"

namespace vnd {

/// Contribution level at which an item counts as affected by a node
/// (display score counts, PCP membership).
inline constexpr double kAffectedThreshold = 0.1;
inline constexpr std::size_t kCoverageBins = 100;

/// nHigh * ln(totalLow / max(nLowAffected, 1))
double display_score(std::size_t nHigh, std::size_t nLowAffected, std::size_t totalLow);

struct Coverage {
  double high = 0.0;
  double low = 0.0;
};

/// Contribution-weighted share of high and of low items.
Coverage coverage_bars(const NodeContribution& nc, const std::vector<bool>& highMask);

/// Target distribution weighted by the node's contributions.
std::vector<double> target_histogram(const NodeContribution& nc, const Dataset& data, std::size_t bins);

/// Per-node strip over the high-value items. Items are grouped by their
/// argmax node (ties to the lower node index, dormant nodes skipped) in
/// node order; items no node contributes to form a trailing group. Each
/// node's histogram holds, per bin of these running numbers, the mean of
/// its own c over the items in the bin.
/// Result is parallel to `nodes`; dormant nodes get an all-zero vector.
std::vector<std::vector<double>> node_coverage_histogram(const std::vector<NodeContribution>& nodes,
                                                         const std::vector<bool>& highMask,
                                                         std::size_t bins = kCoverageBins);

struct StackedHistogram {
  std::size_t variableIndex = 0;
  std::size_t inputBins = 0;
  std::size_t targetBins = 0;
  std::vector<double> weights;  // inputBins x targetBins row-major

  double at(std::size_t inputBin, std::size_t targetBin) const { return weights[inputBin * targetBins + targetBin]; }
  double total() const;
};

/// Target bin of a value: with two bins the split is at tau, otherwise
/// equal-width bins over [0,1].
std::size_t target_bin(double y, std::size_t targetBins, double tau);

StackedHistogram stacked_histogram(const NodeContribution& nc, const Dataset& data, std::size_t variableIndex,
                                   std::size_t inputBins, std::size_t targetBins);

struct PcpPayload {
  std::size_t nodeIndex = 0;
  std::vector<std::size_t> columns;   // input indices, ranked
  std::vector<std::string> names;
  std::vector<double> values;         // N x columns row-major
  std::vector<bool> contributing;
  std::vector<double> contributions;
  std::vector<double> target;
};

PcpPayload pcp_payload(const NodeContribution& nc, const Dataset& data, const VariableRanking& ranking,
                       double membershipThreshold = kAffectedThreshold);

struct DisplayOptions {
  std::size_t inputBins = 10;
  std::size_t targetBins = 2;
  std::size_t coverageBins = kCoverageBins;
  double rankCutoff = kDefaultRankCutoff;
  double affectedThreshold = kAffectedThreshold;

  void validate() const;
};

struct NodeCard {
  std::size_t nodeIndex = 0;
  double outputWeight = 0.0;
  double meanActivation = 0.0;
  double meanContribution = 0.0;
  double displayScore = 0.0;
  std::size_t affectedHigh = 0;
  std::size_t affectedLow = 0;
  Coverage coverage;
  std::vector<double> targetHistogram;
  std::vector<double> coverageHistogram;
  VariableRanking ranking;
  std::vector<StackedHistogram> stackedHistograms;  // one per visible variable, ranked
};

/// Cards for every non-dormant positive node, sorted by descending display
/// score (ties by node index).
std::vector<NodeCard> build_cards(const Network& net, const Dataset& data,
                                  const std::vector<NodeContribution>& nodes, const DisplayOptions& options = {});

}  // namespace vnd
