#pragma once

// Compares every library decomposition output on one instance against the
// oracles. Returns a description of the first mismatch, if any.

#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "support/oracles.hpp"
#include "vnd/contribution.hpp"
#include "vnd/range_filter.hpp"
#include "vnd/ranking.hpp"
#include "vnd/views.hpp"

namespace oracle {

inline std::optional<std::string> mismatch(const char* what, double got, double want, double tol) {
  if (std::fabs(got - want) <= tol) return std::nullopt;
  std::ostringstream os;
  os.precision(17);
  os << what << ": got " << got << ", expected " << want;
  return os.str();
}

inline vnd::RangeFilter random_filter(std::mt19937_64& gen, std::size_t D) {
  vnd::RangeFilter f;
  f.inputBins = 2 + gen() % 19;
  const std::size_t count = 1 + gen() % std::min<std::size_t>(D + 1, 4);
  for (std::size_t s = 0; s < count; ++s) {
    vnd::RangeSelection sel;
    sel.variableIndex = gen() % D;
    const std::size_t picks = 1 + gen() % f.inputBins;
    for (std::size_t p = 0; p < picks; ++p) sel.bins.insert(gen() % f.inputBins);
    f.selections.push_back(sel);
  }
  return f;
}

inline std::optional<std::string> compare_decomposition(const Instance& inst, std::mt19937_64& gen, double tol) {
  const auto& net = inst.net;
  const auto& data = inst.data;
  const Scaled expect = scaled(net, data);
  const auto nodes = vnd::contributions_all(net, data);
  if (nodes.size() != expect.nodes.size()) return "positive node count differs";

  std::vector<bool> dormant;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const auto& nc = nodes[j];
    if (nc.nodeIndex != expect.nodes[j]) return "node order differs";
    dormant.push_back(nc.dormant);
    if (auto m = mismatch("Z", nc.Z, expect.Z[j], tol)) return m;
    for (std::size_t n = 0; n < data.size(); ++n) {
      if (auto m = mismatch("contribution", nc.contributions[n], expect.c[j][n], tol)) return m;
    }
    if (nc.dormant) continue;

    const auto ranking = vnd::rank_variables(net, data, nc);
    const auto r = ranks(net, data, nc.nodeIndex, expect.c[j]);
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (auto m = mismatch("rank", ranking.ranks[k], r[k], tol)) return m;
    }

    const auto [hi, lo] = coverage(expect.c[j], data.highMask());
    const auto bars = vnd::coverage_bars(nc, data.highMask());
    if (auto m = mismatch("high coverage", bars.high, hi, tol)) return m;
    if (auto m = mismatch("low coverage", bars.low, lo, tol)) return m;

    const std::size_t tb = 2 + gen() % 19;
    const auto th = vnd::target_histogram(nc, data, tb);
    const auto thExpect = target_hist(expect.c[j], data, tb);
    for (std::size_t b = 0; b < tb; ++b) {
      if (auto m = mismatch("target histogram", th[b], thExpect[b], tol)) return m;
    }

    for (std::size_t k = 0; k < data.inputCount(); ++k) {
      const std::size_t ib = 2 + gen() % 19;
      const std::size_t sb = gen() % 2 == 0 ? 2 : 2 + gen() % 19;
      const auto sh = vnd::stacked_histogram(nc, data, k, ib, sb);
      const auto shExpect = stacked(expect.c[j], data, k, ib, sb);
      for (std::size_t a = 0; a < ib; ++a) {
        for (std::size_t b = 0; b < sb; ++b) {
          if (auto m = mismatch("stacked histogram", sh.at(a, b), shExpect[a][b], tol)) return m;
        }
      }
    }
  }

  const std::size_t cb = 1 + gen() % 100;
  const auto cov = vnd::node_coverage_histogram(nodes, data.highMask(), cb);
  const auto covExpect = node_coverage(expect.c, dormant, data.highMask(), cb);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (std::size_t b = 0; b < cb; ++b) {
      if (auto m = mismatch("node coverage histogram", cov[j][b], covExpect[j][b], tol)) return m;
    }
  }

  const auto filter = random_filter(gen, data.inputCount());
  const auto result = vnd::eval_range_filter(filter, data);
  const auto matches = filter_matches(filter, data);
  if (result.matches != matches) return "range filter matches differ";
  std::size_t matchedHigh = 0;
  for (auto n : matches) matchedHigh += data.highMask()[n] ? 1 : 0;
  if (result.matchedCount != matches.size() || result.matchedHighCount != matchedHigh) {
    return "range filter counts differ";
  }
  return std::nullopt;
}

}  // namespace oracle
