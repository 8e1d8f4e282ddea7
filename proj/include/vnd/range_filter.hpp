#pragma once

#include <set>
#include <vector>

#include "vnd/dataset.hpp"

namespace vnd {

/// Bins are selected per variable. A variable matches when its binned
/// value is one of its selected bins; all listed variables must match.
struct RangeSelection {
  std::size_t variableIndex = 0;
  std::set<std::size_t> bins;
};

struct RangeFilter {
  std::vector<RangeSelection> selections;
  std::size_t inputBins = 10;
};

struct FilterResult {
  std::size_t matchedCount = 0;
  std::size_t matchedHighCount = 0;
  std::size_t totalCount = 0;
  std::size_t totalHighCount = 0;
  double highRecall = 0.0;  // matched high / all high
  std::vector<double> targetHistogram;
  double fisherP = 1.0;
  std::vector<std::size_t> matches;  // item indices
};

/// Evaluated against the full dataset; independent of any network.
/// Throws EmptyFilter when no bins are selected, InvalidArgument on bad
/// variable or bin indices.
FilterResult eval_range_filter(const RangeFilter& filter, const Dataset& data, std::size_t targetBins = 10);

}  // namespace vnd
