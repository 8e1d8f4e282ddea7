#include "vnd/views.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vnd/error.hpp"

namespace vnd {

double display_score(std::size_t nHigh, std::size_t nLowAffected, std::size_t totalLow) {
  if (nHigh == 0 || totalLow == 0) return 0.0;
  const double denom = static_cast<double>(std::max<std::size_t>(nLowAffected, 1));
  return static_cast<double>(nHigh) * std::log(static_cast<double>(totalLow) / denom);
}

Coverage coverage_bars(const NodeContribution& nc, const std::vector<bool>& highMask) {
  double high = 0.0;
  double low = 0.0;
  std::size_t nHigh = 0;
  std::size_t nLow = 0;
  for (std::size_t n = 0; n < highMask.size(); ++n) {
    if (highMask[n]) {
      high += nc.contributions[n];
      ++nHigh;
    } else {
      low += nc.contributions[n];
      ++nLow;
    }
  }
  return {nHigh ? high / static_cast<double>(nHigh) : 0.0, nLow ? low / static_cast<double>(nLow) : 0.0};
}

std::vector<double> target_histogram(const NodeContribution& nc, const Dataset& data, std::size_t bins) {
  if (bins < 2) throw Error(ErrorCode::InvalidArgument, "histogram needs at least 2 bins");
  std::vector<double> out(bins, 0.0);
  for (std::size_t n = 0; n < data.size(); ++n) {
    out[bin_index(data.target()[n], bins)] += nc.contributions[n];
  }
  return out;
}

std::vector<std::vector<double>> node_coverage_histogram(const std::vector<NodeContribution>& nodes,
                                                         const std::vector<bool>& highMask, std::size_t bins) {
  if (bins < 1) throw Error(ErrorCode::InvalidArgument, "coverage histogram needs at least 1 bin");
  std::vector<std::vector<double>> out(nodes.size(), std::vector<double>(bins, 0.0));

  // Group key per high item: slot of the argmax node, or nodes.size() when
  // no node contributes at all.
  std::vector<std::pair<std::size_t, std::size_t>> keyed;  // (group, item)
  for (std::size_t n = 0; n < highMask.size(); ++n) {
    if (!highMask[n]) continue;
    std::size_t best = nodes.size();
    double bestValue = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (nodes[j].dormant) continue;
      const double c = nodes[j].contributions[n];
      if (c > bestValue) {
        best = j;
        bestValue = c;
      }
    }
    keyed.emplace_back(best, n);
  }
  // Node slots follow node-index order because contributions_all emits
  // them that way; stable sort keeps item order inside a group.
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  // Each bin holds the mean contribution of its items.
  const std::size_t K = keyed.size();
  std::vector<std::size_t> counts(bins, 0);
  for (std::size_t pos = 0; pos < K; ++pos) {
    const std::size_t bin = std::min(bins - 1, pos * bins / K);
    const std::size_t item = keyed[pos].second;
    ++counts[bin];
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (!nodes[j].dormant) out[j][bin] += nodes[j].contributions[item];
    }
  }
  for (auto& row : out) {
    for (std::size_t b = 0; b < bins; ++b) {
      if (counts[b] > 0) row[b] /= static_cast<double>(counts[b]);
    }
  }
  return out;
}

double StackedHistogram::total() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

std::size_t target_bin(double y, std::size_t targetBins, double tau) {
  if (targetBins == 2) return y >= tau ? 1 : 0;
  return bin_index(y, targetBins);
}

StackedHistogram stacked_histogram(const NodeContribution& nc, const Dataset& data, std::size_t variableIndex,
                                   std::size_t inputBins, std::size_t targetBins) {
  if (inputBins < 2 || targetBins < 2) throw Error(ErrorCode::InvalidArgument, "histograms need at least 2 bins");
  if (variableIndex >= data.inputCount()) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  StackedHistogram hist{variableIndex, inputBins, targetBins, std::vector<double>(inputBins * targetBins, 0.0)};
  for (std::size_t n = 0; n < data.size(); ++n) {
    const double c = nc.contributions[n];
    if (c == 0.0) continue;
    const std::size_t row = bin_index(data.value(n, variableIndex), inputBins);
    const std::size_t col = target_bin(data.target()[n], targetBins, data.threshold());
    hist.weights[row * targetBins + col] += c;
  }
  return hist;
}

PcpPayload pcp_payload(const NodeContribution& nc, const Dataset& data, const VariableRanking& ranking,
                       double membershipThreshold) {
  PcpPayload p;
  p.nodeIndex = nc.nodeIndex;
  p.columns = ranking.visible;
  for (std::size_t k : p.columns) p.names.push_back(data.inputNames()[k]);
  p.values.reserve(data.size() * p.columns.size());
  p.contributing.resize(data.size());
  for (std::size_t n = 0; n < data.size(); ++n) {
    for (std::size_t k : p.columns) p.values.push_back(data.value(n, k));
    p.contributing[n] = nc.contributions[n] >= membershipThreshold;
  }
  p.contributions = nc.contributions;
  p.target = data.target();
  return p;
}

void DisplayOptions::validate() const {
  if (inputBins < 2 || inputBins > 20 || targetBins < 2 || targetBins > 20) {
    throw Error(ErrorCode::InvalidArgument, "bin counts must lie in [2, 20]");
  }
  if (coverageBins < 1) throw Error(ErrorCode::InvalidArgument, "coverageBins must be >= 1");
  if (!(rankCutoff >= 0.0 && rankCutoff <= 1.0)) throw Error(ErrorCode::InvalidArgument, "rankCutoff must lie in [0,1]");
}

std::vector<NodeCard> build_cards(const Network& net, const Dataset& data,
                                  const std::vector<NodeContribution>& nodes, const DisplayOptions& options) {
  options.validate();
  const auto& high = data.highMask();
  const std::size_t totalLow = data.size() - data.highCount();
  const auto coverageHists = node_coverage_histogram(nodes, high, options.coverageBins);

  std::vector<NodeCard> cards;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const NodeContribution& nc = nodes[j];
    if (nc.dormant) continue;
    NodeCard card;
    card.nodeIndex = nc.nodeIndex;
    card.outputWeight = net.v[nc.nodeIndex];
    card.meanActivation = nc.meanActivation;
    card.meanContribution = nc.meanContribution;
    for (std::size_t n = 0; n < data.size(); ++n) {
      if (nc.contributions[n] < options.affectedThreshold) continue;
      ++(high[n] ? card.affectedHigh : card.affectedLow);
    }
    card.displayScore = display_score(card.affectedHigh, card.affectedLow, totalLow);
    card.coverage = coverage_bars(nc, high);
    card.targetHistogram = target_histogram(nc, data, options.targetBins);
    card.coverageHistogram = coverageHists[j];
    card.ranking = rank_variables(net, data, nc, options.rankCutoff);
    for (std::size_t k : card.ranking.visible) {
      card.stackedHistograms.push_back(stacked_histogram(nc, data, k, options.inputBins, options.targetBins));
    }
    cards.push_back(std::move(card));
  }
  std::stable_sort(cards.begin(), cards.end(), [](const NodeCard& a, const NodeCard& b) {
    if (a.displayScore != b.displayScore) return a.displayScore > b.displayScore;
    return a.nodeIndex < b.nodeIndex;
  });
  return cards;
}

}  // namespace vnd
