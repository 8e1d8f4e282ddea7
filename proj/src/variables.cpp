#include "vnd/variables.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>

#include "vnd/error.hpp"

namespace vnd {
namespace {

constexpr std::size_t kCategoricalHintMaxDistinct = 12;

double quantile_sorted(std::span<const double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::string to_string(VariableKind kind) {
  switch (kind) {
    case VariableKind::Numeric: return "numeric";
    case VariableKind::Categorical: return "categorical";
    case VariableKind::BinaryFork: return "binaryFork";
  }
  return "numeric";
}

std::optional<double> parse_real(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

KindInference infer_kind(std::span<const Cell> column) {
  if (column.empty()) throw Error(ErrorCode::InvalidArgument, "empty column");
  bool anyPresent = false;
  bool numeric = true;
  std::set<std::string> distinct;
  for (const auto& cell : column) {
    if (!cell) {
      distinct.insert(kMissingCategory);
      continue;
    }
    anyPresent = true;
    distinct.insert(*cell);
    if (numeric && !parse_real(*cell)) numeric = false;
  }
  if (!anyPresent) throw Error(ErrorCode::AllMissing, "column has no values");
  if (numeric) return {VariableKind::Numeric, {}};
  return {VariableKind::Categorical, {distinct.begin(), distinct.end()}};
}

bool detect_log_scale(std::span<const double> values) {
  if (values.empty()) return false;
  if (std::any_of(values.begin(), values.end(), [](double v) { return !(v > 0.0); })) return false;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
  const double median = quantile_sorted(sorted, 0.5);
  const double q75 = quantile_sorted(sorted, 0.75);
  return mean > 3.0 * median || sorted.back() > 100.0 * q75;
}

std::vector<VariableSpec> infer_specs(const RawTable& table) {
  std::vector<VariableSpec> specs;
  for (std::size_t c = 0; c < table.columnCount(); ++c) {
    const auto column = table.column(c);
    VariableSpec spec;
    spec.name = table.columnNames[c];
    KindInference kind;
    try {
      kind = infer_kind(column);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AllMissing) throw;
      spec.enabled = false;
      spec.degenerate = true;
      specs.push_back(std::move(spec));
      continue;
    }
    spec.kind = kind.kind;
    if (kind.kind == VariableKind::Numeric) {
      std::vector<double> values;
      std::set<double> distinct;
      bool allIntegral = true;
      for (const auto& cell : column) {
        if (!cell) continue;
        const double v = *parse_real(*cell);
        values.push_back(v);
        distinct.insert(v);
        allIntegral = allIntegral && v == std::floor(v);
      }
      spec.scaleMin = *distinct.begin();
      spec.scaleMax = *distinct.rbegin();
      spec.degenerate = distinct.size() < 2;
      spec.logScale = detect_log_scale(values);
      spec.categoricalHint = allIntegral && distinct.size() <= kCategoricalHintMaxDistinct;
    } else {
      spec.categories = std::move(kind.categories);
      spec.scaleMin = 0.0;
      spec.scaleMax = 1.0;
      spec.degenerate = spec.categories.size() < 2;
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::vector<VariableSpec> fork_categorical(const VariableSpec& spec, const RawTable& table) {
  if (spec.kind != VariableKind::Categorical) {
    throw Error(ErrorCode::NotCategorical, "'" + spec.name + "' is not categorical");
  }
  if (!table.columnIndex(spec.name)) {
    throw Error(ErrorCode::UnknownVariable, "no column '" + spec.name + "'");
  }
  std::vector<VariableSpec> children;
  for (const auto& category : spec.categories) {
    VariableSpec child;
    child.name = spec.name + "=" + category;
    child.kind = VariableKind::BinaryFork;
    child.enabled = true;
    child.scaleMin = 0.0;
    child.scaleMax = 1.0;
    child.sourceVariable = spec.name;
    child.forkCategory = category;
    child.degenerate = spec.categories.size() < 2;
    children.push_back(std::move(child));
  }
  return children;
}

VariableSpec& find_spec(std::vector<VariableSpec>& specs, std::string_view name) {
  auto it = std::find_if(specs.begin(), specs.end(), [&](const auto& s) { return s.name == name; });
  if (it == specs.end()) throw Error(ErrorCode::UnknownVariable, "unknown variable '" + std::string(name) + "'");
  return *it;
}

const VariableSpec& find_spec(const std::vector<VariableSpec>& specs, std::string_view name) {
  auto it = std::find_if(specs.begin(), specs.end(), [&](const auto& s) { return s.name == name; });
  if (it == specs.end()) throw Error(ErrorCode::UnknownVariable, "unknown variable '" + std::string(name) + "'");
  return *it;
}

void set_target(std::vector<VariableSpec>& specs, std::string_view name) {
  VariableSpec& chosen = find_spec(specs, name);
  for (auto& s : specs) s.isTarget = false;
  chosen.isTarget = true;
  chosen.enabled = true;
}

void set_enabled(std::vector<VariableSpec>& specs, std::string_view name, bool enabled) {
  VariableSpec& spec = find_spec(specs, name);
  if (!enabled && spec.isTarget) {
    throw Error(ErrorCode::TargetLocked, "the target variable must stay enabled");
  }
  spec.enabled = enabled;
}

void set_log_scale(std::vector<VariableSpec>& specs, std::string_view name, bool logScale) {
  VariableSpec& spec = find_spec(specs, name);
  if (logScale && (spec.kind != VariableKind::Numeric || !(spec.scaleMin > 0.0))) {
    throw Error(ErrorCode::InvalidArgument, "log scale needs strictly positive numeric values");
  }
  spec.logScale = logScale;
}

void fork_variable(std::vector<VariableSpec>& specs, const RawTable& table, std::string_view name) {
  auto children = fork_categorical(find_spec(specs, name), table);
  // Refork replaces the children of an earlier fork of the same variable.
  std::erase_if(specs, [&](const VariableSpec& s) { return s.sourceVariable == name; });
  auto it = std::find_if(specs.begin(), specs.end(), [&](const auto& s) { return s.name == name; });
  it->enabled = false;
  it->isTarget = false;
  specs.insert(it + 1, children.begin(), children.end());
}

}  // namespace vnd
