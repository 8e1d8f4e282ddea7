#pragma once

#include <span>
#include <vector>

#include "vnd/dataset.hpp"
#include "vnd/network.hpp"

namespace vnd {

/// Z values at or below this mark a node as dormant.
inline constexpr double kDormantEpsilon = 1e-9;

/// Unscaled contributions for one item, indexed by hidden node. Only
/// positive nodes (v_i > 0) receive a value:
///   u_i = max(0, h_i * min(y_p, h_i v_i) / sum_{j: v_j > 0} h_j v_j)
/// Non-positive nodes are reported as 0. Throws NoPositiveNodes.
std::vector<double> contribution(const Network& net, std::span<const double> x);

/// Same as above on precomputed activations; writes into `out` (size H).
void contribution_from_hidden(const Network& net, std::span<const double> h, std::span<double> out);

/// Scaled contributions of one positive node over a whole dataset.
struct NodeContribution {
  std::size_t nodeIndex = 0;
  double Z = 0.0;
  std::vector<double> contributions;  // c per item, in [0,1]
  double meanActivation = 0.0;
  double meanContribution = 0.0;
  bool dormant = false;
};

/// One entry per positive node, in node-index order.
std::vector<NodeContribution> contributions_all(const Network& net, const Dataset& data);

/// Scaled contribution of every positive node at an arbitrary point, using
/// the Z values of a previous contributions_all() pass.
std::vector<double> scaled_contribution_at(const Network& net, std::span<const NodeContribution> nodes,
                                           std::span<const double> x);

}  // namespace vnd
