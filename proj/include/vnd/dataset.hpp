#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vnd/csv.hpp"
#include "vnd/variables.hpp"

namespace vnd {

/// Normalized, immutable analysis table. `rows` is N x D row-major over the
/// enabled non-target variables (in spec order); `target` and `threshold`
/// are in normalized units.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<VariableSpec> specs, std::vector<std::string> inputNames,
          std::vector<double> rows, std::vector<double> target, double threshold);

  const std::vector<VariableSpec>& specs() const { return specs_; }
  const std::vector<std::string>& inputNames() const { return inputNames_; }
  const std::vector<double>& rows() const { return rows_; }
  const std::vector<double>& target() const { return target_; }
  const std::vector<bool>& highMask() const { return highMask_; }
  double threshold() const { return threshold_; }

  std::size_t size() const { return target_.size(); }
  std::size_t inputCount() const { return inputNames_.size(); }
  std::span<const double> row(std::size_t n) const {
    return {rows_.data() + n * inputNames_.size(), inputNames_.size()};
  }
  double value(std::size_t n, std::size_t k) const { return rows_[n * inputNames_.size() + k]; }
  std::vector<double> inputColumn(std::size_t k) const;
  std::size_t highCount() const { return highCount_; }
  const VariableSpec& targetSpec() const;
  /// True when every target value is identical.
  bool targetDegenerate() const;

  /// Pure re-thresholding: returns a copy with a new threshold and mask.
  Dataset withThreshold(double threshold) const;

 private:
  std::vector<VariableSpec> specs_;
  std::vector<std::string> inputNames_;
  std::vector<double> rows_;
  std::vector<double> target_;
  double threshold_ = 0.5;
  std::vector<bool> highMask_;
  std::size_t highCount_ = 0;
};

/// Scales one raw value of a numeric spec into [0,1]; clamps out-of-range.
double normalize_value(const VariableSpec& spec, double raw);
/// Inverse of normalize_value for numeric specs.
double denormalize_value(const VariableSpec& spec, double normalized);

/// Builds the analysis dataset. Rows whose target cell is missing are
/// dropped; missing inputs become 0 (the scaled minimum).
Dataset normalize(const RawTable& table, const std::vector<VariableSpec>& specs, double threshold = 0.5);

/// Midpoint of the scaled target range.
double default_threshold(std::span<const double> target);
double median_threshold(std::span<const double> target);

/// Equal-width bin of a value in [0,1]. Values on an inner edge go to the
/// upper bin, 1.0 goes to the last bin.
std::size_t bin_index(double value, std::size_t bins);

std::vector<std::size_t> variable_histogram(std::span<const double> values, std::size_t bins);

}  // namespace vnd
