#include "vnd/range_filter.hpp"

#include <map>

#include "vnd/error.hpp"
#include "vnd/fisher.hpp"

namespace vnd {

FilterResult eval_range_filter(const RangeFilter& filter, const Dataset& data, std::size_t targetBins) {
  if (filter.inputBins < 2) throw Error(ErrorCode::InvalidArgument, "inputBins must be >= 2");
  if (targetBins < 2) throw Error(ErrorCode::InvalidArgument, "targetBins must be >= 2");

  // Repeated selections of one variable merge into one bin set.
  std::map<std::size_t, std::set<std::size_t>> byVariable;
  for (const auto& sel : filter.selections) {
    if (sel.variableIndex >= data.inputCount()) {
      throw Error(ErrorCode::InvalidArgument, "variable index " + std::to_string(sel.variableIndex) + " out of range");
    }
    for (std::size_t bin : sel.bins) {
      if (bin >= filter.inputBins) {
        throw Error(ErrorCode::InvalidArgument, "bin " + std::to_string(bin) + " out of range");
      }
      byVariable[sel.variableIndex].insert(bin);
    }
  }
  if (byVariable.empty()) throw Error(ErrorCode::EmptyFilter, "filter selects no bins");

  FilterResult result;
  result.totalCount = data.size();
  result.totalHighCount = data.highCount();
  result.targetHistogram.assign(targetBins, 0.0);
  for (std::size_t n = 0; n < data.size(); ++n) {
    bool match = true;
    for (const auto& [k, bins] : byVariable) {
      if (!bins.contains(bin_index(data.value(n, k), filter.inputBins))) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    result.matches.push_back(n);
    ++result.matchedCount;
    if (data.highMask()[n]) ++result.matchedHighCount;
    result.targetHistogram[bin_index(data.target()[n], targetBins)] += 1.0;
  }
  if (result.totalHighCount > 0) {
    result.highRecall = static_cast<double>(result.matchedHighCount) / static_cast<double>(result.totalHighCount);
  }
  const std::size_t matchedLow = result.matchedCount - result.matchedHighCount;
  const std::size_t restHigh = result.totalHighCount - result.matchedHighCount;
  const std::size_t restLow = (result.totalCount - result.totalHighCount) - matchedLow;
  result.fisherP = fisher_exact(result.matchedHighCount, matchedLow, restHigh, restLow);
  return result;
}

}  // namespace vnd
