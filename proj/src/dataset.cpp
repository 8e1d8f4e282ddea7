#include "vnd/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "vnd/error.hpp"

namespace vnd {
namespace {

double transform(const VariableSpec& spec, double raw) { return spec.logScale ? std::log10(raw) : raw; }

// Numeric value of one cell under a spec, already scaled to [0,1].
double encode_cell(const VariableSpec& spec, const RawTable& table, std::size_t row,
                   std::size_t column) {
  const Cell& cell = table.cells[row][column];
  switch (spec.kind) {
    case VariableKind::Numeric: {
      if (!cell) return 0.0;
      return normalize_value(spec, *parse_real(*cell));
    }
    case VariableKind::Categorical: {
      const std::string& label = cell ? *cell : std::string(kMissingCategory);
      auto it = std::lower_bound(spec.categories.begin(), spec.categories.end(), label);
      if (it == spec.categories.end() || *it != label || spec.categories.size() < 2) return 0.0;
      return static_cast<double>(it - spec.categories.begin()) /
             static_cast<double>(spec.categories.size() - 1);
    }
    case VariableKind::BinaryFork: {
      const std::string& label = cell ? *cell : std::string(kMissingCategory);
      return label == *spec.forkCategory ? 1.0 : 0.0;
    }
  }
  return 0.0;
}

std::size_t source_column(const VariableSpec& spec, const RawTable& table) {
  const std::string& column = spec.sourceVariable ? *spec.sourceVariable : spec.name;
  auto idx = table.columnIndex(column);
  if (!idx) throw Error(ErrorCode::UnknownVariable, "no column '" + column + "'");
  return *idx;
}

}  // namespace

Dataset::Dataset(std::vector<VariableSpec> specs, std::vector<std::string> inputNames,
                 std::vector<double> rows, std::vector<double> target, double threshold)
    : specs_(std::move(specs)),
      inputNames_(std::move(inputNames)),
      rows_(std::move(rows)),
      target_(std::move(target)),
      threshold_(threshold) {
  if (inputNames_.empty()) throw Error(ErrorCode::NoEnabledInputs, "dataset has no inputs");
  if (rows_.size() != target_.size() * inputNames_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "row matrix does not match target length");
  }
  if (!(threshold_ > 0.0 && threshold_ < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "threshold must lie in (0,1)");
  }
  // A constant target has no low/high split; every item counts as high.
  const bool constant = targetDegenerate();
  highMask_.resize(target_.size());
  for (std::size_t n = 0; n < target_.size(); ++n) {
    highMask_[n] = constant || target_[n] >= threshold_;
    highCount_ += highMask_[n] ? 1 : 0;
  }
}

std::vector<double> Dataset::inputColumn(std::size_t k) const {
  std::vector<double> out(size());
  for (std::size_t n = 0; n < size(); ++n) out[n] = value(n, k);
  return out;
}

const VariableSpec& Dataset::targetSpec() const {
  auto it = std::find_if(specs_.begin(), specs_.end(), [](const auto& s) { return s.isTarget; });
  if (it == specs_.end()) throw Error(ErrorCode::NoTarget, "no target variable");
  return *it;
}

bool Dataset::targetDegenerate() const {
  return std::all_of(target_.begin(), target_.end(), [&](double y) { return y == target_.front(); });
}

Dataset Dataset::withThreshold(double threshold) const {
  return Dataset(specs_, inputNames_, rows_, target_, threshold);
}

double normalize_value(const VariableSpec& spec, double raw) {
  if (spec.degenerate || !(spec.scaleMax > spec.scaleMin)) return 0.0;
  const double lo = transform(spec, spec.scaleMin);
  const double hi = transform(spec, spec.scaleMax);
  if (spec.logScale && !(raw > 0.0)) return 0.0;
  return std::clamp((transform(spec, raw) - lo) / (hi - lo), 0.0, 1.0);
}

double denormalize_value(const VariableSpec& spec, double normalized) {
  if (spec.degenerate || !(spec.scaleMax > spec.scaleMin)) return spec.scaleMin;
  if (spec.logScale) {
    const double lo = std::log10(spec.scaleMin);
    const double hi = std::log10(spec.scaleMax);
    return std::pow(10.0, lo + normalized * (hi - lo));
  }
  return spec.scaleMin + normalized * (spec.scaleMax - spec.scaleMin);
}

Dataset normalize(const RawTable& table, const std::vector<VariableSpec>& specs, double threshold) {
  const VariableSpec* targetSpec = nullptr;
  std::size_t targets = 0;
  for (const auto& s : specs) {
    if (s.isTarget) {
      targetSpec = &s;
      ++targets;
    }
  }
  if (targets == 0) throw Error(ErrorCode::NoTarget, "no target variable selected");
  if (targets > 1) throw Error(ErrorCode::InvalidArgument, "more than one target variable");
  const std::size_t targetColumn = source_column(*targetSpec, table);

  std::vector<const VariableSpec*> inputs;
  std::vector<std::size_t> inputColumns;
  std::vector<std::string> names;
  for (const auto& s : specs) {
    if (!s.enabled || s.isTarget) continue;
    inputs.push_back(&s);
    inputColumns.push_back(source_column(s, table));
    names.push_back(s.name);
  }
  if (inputs.empty()) throw Error(ErrorCode::NoEnabledInputs, "no enabled input variables");

  std::vector<double> rows;
  std::vector<double> target;
  rows.reserve(table.rowCount() * inputs.size());
  target.reserve(table.rowCount());
  for (std::size_t r = 0; r < table.rowCount(); ++r) {
    // A categorical target encodes missing as its own category, so only
    // numeric targets can have undefined rows.
    if (targetSpec->kind == VariableKind::Numeric && !table.cells[r][targetColumn]) continue;
    target.push_back(encode_cell(*targetSpec, table, r, targetColumn));
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      rows.push_back(encode_cell(*inputs[k], table, r, inputColumns[k]));
    }
  }
  if (target.empty()) throw Error(ErrorCode::EmptyTable, "no rows with a target value");
  return Dataset(specs, std::move(names), std::move(rows), std::move(target), threshold);
}

double default_threshold(std::span<const double>) { return 0.5; }

double median_threshold(std::span<const double> target) {
  if (target.empty()) return 0.5;
  std::vector<double> sorted(target.begin(), target.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  double median = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  // The threshold has to stay inside the open unit interval.
  return std::clamp(median, 1e-9, 1.0 - 1e-9);
}

std::size_t bin_index(double value, std::size_t bins) {
  if (!(value > 0.0)) return 0;
  const auto idx = static_cast<std::size_t>(std::floor(value * static_cast<double>(bins)));
  return std::min(idx, bins - 1);
}

std::vector<std::size_t> variable_histogram(std::span<const double> values, std::size_t bins) {
  if (bins < 2) throw Error(ErrorCode::InvalidArgument, "histogram needs at least 2 bins");
  std::vector<std::size_t> counts(bins, 0);
  for (double v : values) ++counts[bin_index(v, bins)];
  return counts;
}

}  // namespace vnd
