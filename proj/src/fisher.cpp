#include "vnd/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace vnd {
namespace {

double log_choose(std::uint64_t n, std::uint64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

double fisher_exact(std::uint64_t aHigh, std::uint64_t aLow, std::uint64_t bHigh, std::uint64_t bLow) {
  const std::uint64_t rowA = aHigh + aLow;
  const std::uint64_t rowB = bHigh + bLow;
  const std::uint64_t colHigh = aHigh + bHigh;
  const std::uint64_t n = rowA + rowB;
  const std::uint64_t colLow = n - colHigh;
  if (rowA == 0 || rowB == 0 || colHigh == 0 || colLow == 0) return 1.0;

  const double logDenom = log_choose(n, colHigh);
  auto logProb = [&](std::uint64_t x) { return log_choose(rowA, x) + log_choose(rowB, colHigh - x) - logDenom; };

  const std::uint64_t lo = colHigh > rowB ? colHigh - rowB : 0;
  const std::uint64_t hi = std::min(rowA, colHigh);
  const double observed = logProb(aHigh);
  // Relative slack so tables tied with the observed one are not lost to
  // rounding in lgamma.
  const double cutoff = observed + 1e-7;
  double p = 0.0;
  for (std::uint64_t x = lo; x <= hi; ++x) {
    const double lp = logProb(x);
    if (lp <= cutoff) p += std::exp(lp);
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace vnd
