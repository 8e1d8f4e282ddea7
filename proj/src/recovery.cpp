#include "vnd/recovery.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "vnd/error.hpp"

namespace vnd {

void RecoveryCriteria::validate() const {
  for (double v : {membershipThreshold, patternPurity, patternCoverage, specializationShare}) {
    if (!(v > 0.0 && v <= 1.0)) throw Error(ErrorCode::InvalidArgument, "recovery criteria must lie in (0,1]");
  }
}

std::size_t nearest_maximum(std::span<const double> x, const std::vector<std::vector<double>>& maxima) {
  std::size_t best = 0;
  double bestDist = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < maxima.size(); ++m) {
    double d = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) d += (x[k] - maxima[m][k]) * (x[k] - maxima[m][k]);
    if (d < bestDist) {
      bestDist = d;
      best = m;
    }
  }
  return best;
}

RecoveryReport pattern_recovery(const Network& net, const Dataset& data, const std::vector<NodeContribution>& nodes,
                                const std::vector<std::vector<double>>& maxima, const RecoveryCriteria& criteria) {
  criteria.validate();
  RecoveryReport report;
  report.patternCount = maxima.size();

  const auto& high = data.highMask();
  std::vector<std::size_t> pattern(data.size(), 0);
  for (std::size_t n = 0; n < data.size(); ++n) pattern[n] = nearest_maximum(data.row(n), maxima);

  std::size_t covered = 0;
  for (std::size_t n = 0; n < data.size(); ++n) {
    if (!high[n]) continue;
    const bool any = std::any_of(nodes.begin(), nodes.end(), [&](const NodeContribution& nc) {
      return !nc.dormant && nc.contributions[n] >= criteria.membershipThreshold;
    });
    covered += any ? 1 : 0;
  }
  report.coverage = data.highCount() ? static_cast<double>(covered) / static_cast<double>(data.highCount()) : 0.0;

  std::set<std::size_t> owners;
  const bool anyActive = std::any_of(nodes.begin(), nodes.end(), [](const auto& nc) { return !nc.dormant; });
  for (const auto& point : maxima) {
    long owner = -1;
    if (anyActive) {
      const auto c = scaled_contribution_at(net, nodes, point);
      const auto it = std::max_element(c.begin(), c.end());
      if (*it >= criteria.membershipThreshold) owner = static_cast<long>(nodes[static_cast<std::size_t>(it - c.begin())].nodeIndex);
    }
    report.maximumOwner.push_back(owner);
    if (owner >= 0) owners.insert(static_cast<std::size_t>(owner));
  }
  report.distinctness = owners.size();

  std::vector<bool> specialized(maxima.size(), false);
  report.minPurity = nodes.empty() ? 0.0 : 1.0;
  for (const auto& nc : nodes) {
    if (nc.dormant) continue;
    NodeRecovery nr;
    nr.nodeIndex = nc.nodeIndex;
    nr.patternShare.assign(maxima.size(), 0.0);
    double highMass = 0.0;
    for (std::size_t n = 0; n < data.size(); ++n) {
      const double c = nc.contributions[n];
      nr.mass += c;
      nr.patternShare[pattern[n]] += c;
      if (high[n]) highMass += c;
    }
    if (nr.mass > 0.0) {
      nr.purity = highMass / nr.mass;
      for (auto& share : nr.patternShare) share /= nr.mass;
    }
    for (std::size_t p = 0; p < maxima.size(); ++p) {
      if (nr.patternShare[p] >= criteria.specializationShare) specialized[p] = true;
    }
    report.minPurity = std::min(report.minPurity, nr.purity);
    report.nodes.push_back(std::move(nr));
  }
  if (report.nodes.empty()) report.minPurity = 0.0;
  report.specializedPatterns = static_cast<std::size_t>(std::count(specialized.begin(), specialized.end(), true));
  return report;
}

}  // namespace vnd
