#pragma once

#include <cstdint>

namespace vnd {

/// Two-sided Fisher exact p-value for the 2x2 table
///
///            high   low
///   filter   aHigh  aLow
///   rest     bHigh  bLow
///
/// Sums the hypergeometric probabilities of all tables with the same
/// margins that are no more likely than the observed one. A zero margin
/// yields 1.
double fisher_exact(std::uint64_t aHigh, std::uint64_t aLow, std::uint64_t bHigh, std::uint64_t bLow);

}  // namespace vnd
