#include "vnd/contribution.hpp"

#include <algorithm>

#include "vnd/error.hpp"

namespace vnd {

void contribution_from_hidden(const Network& net, std::span<const double> h, std::span<double> out) {
  double positiveSum = 0.0;
  double prediction = 0.0;
  for (std::size_t i = 0; i < net.hidden; ++i) {
    const double weighted = h[i] * net.v[i];
    prediction += weighted;
    if (net.v[i] > 0.0) positiveSum += weighted;
  }
  std::fill(out.begin(), out.end(), 0.0);
  if (positiveSum < 1e-12) return;
  for (std::size_t i = 0; i < net.hidden; ++i) {
    if (!(net.v[i] > 0.0)) continue;
    const double u = h[i] * std::min(prediction, h[i] * net.v[i]) / positiveSum;
    out[i] = std::max(0.0, u);
  }
}

std::vector<double> contribution(const Network& net, std::span<const double> x) {
  if (net.positiveNodeCount() == 0) throw Error(ErrorCode::NoPositiveNodes, "network has no positive nodes");
  const auto h = hidden_outputs(net, x);
  std::vector<double> u(net.hidden);
  contribution_from_hidden(net, h, u);
  return u;
}

std::vector<NodeContribution> contributions_all(const Network& net, const Dataset& data) {
  if (net.positiveNodeCount() == 0) throw Error(ErrorCode::NoPositiveNodes, "network has no positive nodes");
  if (net.inputs != data.inputCount()) {
    throw Error(ErrorCode::DimensionMismatch, "network and dataset disagree on input count");
  }
  const std::size_t N = data.size();
  std::vector<NodeContribution> nodes;
  std::vector<std::size_t> slot(net.hidden, SIZE_MAX);
  for (std::size_t i = 0; i < net.hidden; ++i) {
    if (!(net.v[i] > 0.0)) continue;
    slot[i] = nodes.size();
    NodeContribution nc;
    nc.nodeIndex = i;
    nc.contributions.resize(N);
    nodes.push_back(std::move(nc));
  }

  std::vector<double> h(net.hidden);
  std::vector<double> u(net.hidden);
  for (std::size_t n = 0; n < N; ++n) {
    hidden_outputs(net, data.row(n), h);
    contribution_from_hidden(net, h, u);
    for (auto& nc : nodes) {
      nc.contributions[n] = u[nc.nodeIndex];
      nc.meanActivation += h[nc.nodeIndex];
      nc.Z = std::max(nc.Z, u[nc.nodeIndex]);
    }
  }

  for (auto& nc : nodes) {
    nc.meanActivation /= static_cast<double>(std::max<std::size_t>(N, 1));
    if (nc.Z <= kDormantEpsilon) {
      nc.dormant = true;
      std::fill(nc.contributions.begin(), nc.contributions.end(), 0.0);
      continue;
    }
    double sum = 0.0;
    for (double& c : nc.contributions) {
      c /= nc.Z;
      sum += c;
    }
    nc.meanContribution = sum / static_cast<double>(N);
  }
  return nodes;
}

std::vector<double> scaled_contribution_at(const Network& net, std::span<const NodeContribution> nodes,
                                           std::span<const double> x) {
  const auto u = contribution(net, x);
  std::vector<double> out(nodes.size(), 0.0);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (nodes[j].dormant) continue;
    out[j] = std::min(1.0, u[nodes[j].nodeIndex] / nodes[j].Z);
  }
  return out;
}

}  // namespace vnd
