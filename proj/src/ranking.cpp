#include "vnd/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vnd {

VariableRanking rank_variables(const Network& net, const Dataset& data, const NodeContribution& nc,
                               double cutoff) {
  const std::size_t D = data.inputCount();
  const std::size_t N = data.size();
  VariableRanking r;
  r.nodeIndex = nc.nodeIndex;
  r.ranks.assign(D, 0.0);
  r.meanValues.assign(D, 0.0);
  r.weights.assign(net.nodeWeights(nc.nodeIndex).begin(), net.nodeWeights(nc.nodeIndex).end());

  double cSum = 0.0;
  double complementSum = 0.0;
  std::vector<double> weighted(D, 0.0);
  std::vector<double> complementWeighted(D, 0.0);
  for (std::size_t n = 0; n < N; ++n) {
    const double c = nc.contributions[n];
    cSum += c;
    complementSum += 1.0 - c;
    const auto x = data.row(n);
    for (std::size_t k = 0; k < D; ++k) {
      weighted[k] += x[k] * c;
      complementWeighted[k] += x[k] * (1.0 - c);
    }
  }

  for (std::size_t k = 0; k < D; ++k) {
    if (cSum > 0.0) r.meanValues[k] = weighted[k] / cSum;
    const double w = r.weights[k];
    if (w > 0.0 && cSum > 0.0) {
      r.ranks[k] = w * weighted[k] / cSum;
    } else if (w < 0.0 && complementSum > 0.0) {
      r.ranks[k] = -w * complementWeighted[k] / complementSum;
    }
  }

  r.order.resize(D);
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](std::size_t a, std::size_t b) { return r.ranks[a] > r.ranks[b]; });
  if (D > 0) {
    const double floor = cutoff * r.ranks[r.order.front()];
    for (std::size_t k : r.order) {
      if (r.ranks[k] < floor) break;
      r.visible.push_back(k);
    }
  }
  return r;
}

}  // namespace vnd
