#pragma once

#include <vector>

#include "vnd/benchmark.hpp"
#include "vnd/contribution.hpp"

namespace vnd {

struct RecoveryCriteria {
  double membershipThreshold = 0.1;
  double patternPurity = 0.6;
  double patternCoverage = 0.9;
  /// Share of a node's contribution mass that must sit on one pattern for
  /// the node to count as specialized on it.
  double specializationShare = 0.8;

  void validate() const;
};

struct NodeRecovery {
  std::size_t nodeIndex = 0;
  double mass = 0.0;                 // sum of contributions over all items
  double purity = 0.0;               // share of mass on high items
  std::vector<double> patternShare;  // share of mass in each maximum's basin
};

struct RecoveryReport {
  double coverage = 0.0;
  std::size_t distinctness = 0;
  std::size_t patternCount = 0;
  /// Node claiming each maximum (-1 when none reaches membershipThreshold).
  std::vector<long> maximumOwner;
  std::vector<NodeRecovery> nodes;  // non-dormant positive nodes
  double minPurity = 0.0;
  /// Patterns on which at least one node holds specializationShare of its mass.
  std::size_t specializedPatterns = 0;

  bool recovered(const RecoveryCriteria& criteria, std::size_t requiredDistinct) const {
    return coverage >= criteria.patternCoverage && distinctness >= requiredDistinct;
  }
};

/// Index of the maximum closest to x (Euclidean); ties to the lower index.
std::size_t nearest_maximum(std::span<const double> x, const std::vector<std::vector<double>>& maxima);

/// Compares a decomposition against the known maxima of a benchmark. Every
/// item belongs to the basin (pattern) of its nearest maximum.
RecoveryReport pattern_recovery(const Network& net, const Dataset& data, const std::vector<NodeContribution>& nodes,
                                const std::vector<std::vector<double>>& maxima, const RecoveryCriteria& criteria = {});

}  // namespace vnd
