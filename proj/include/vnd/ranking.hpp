#pragma once

#include <vector>

#include "vnd/contribution.hpp"

namespace vnd {

/// Default share of the top rank below which variables are hidden.
inline constexpr double kDefaultRankCutoff = 0.05;

struct VariableRanking {
  std::size_t nodeIndex = 0;
  std::vector<double> ranks;            // r_k per input
  std::vector<double> weights;          // w_k of the node
  std::vector<double> meanValues;       // contribution-weighted mean of x_k
  std::vector<std::size_t> order;       // inputs by descending rank, ties by index
  std::vector<std::size_t> visible;     // prefix of order with r_k >= cutoff * r_first
};

/// Contribution-weighted importance of every input for one node. Inputs
/// with positive weight average x_k over c; negative weights average over
/// (1 - c); both are scaled by |w_k|.
VariableRanking rank_variables(const Network& net, const Dataset& data, const NodeContribution& nc,
                               double cutoff = kDefaultRankCutoff);

}  // namespace vnd
