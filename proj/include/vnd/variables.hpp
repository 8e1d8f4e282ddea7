#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vnd/csv.hpp"

namespace vnd {

enum class VariableKind { Numeric, Categorical, BinaryFork };

std::string to_string(VariableKind kind);

/// Label given to missing values of a categorical column.
inline constexpr const char* kMissingCategory = "⟨missing⟩";

/// Per-column configuration. Columns of the raw table are referenced by
/// name; forked children reference their parent through sourceVariable.
struct VariableSpec {
  std::string name;
  VariableKind kind = VariableKind::Numeric;
  bool enabled = true;
  bool isTarget = false;
  bool logScale = false;
  double scaleMin = 0.0;  // raw (untransformed) observed minimum
  double scaleMax = 0.0;
  std::vector<std::string> categories;  // sorted; empty for numeric
  std::optional<std::string> sourceVariable;
  std::optional<std::string> forkCategory;
  bool degenerate = false;        // constant column or single category
  bool categoricalHint = false;   // few distinct integer values; still numeric
};

struct KindInference {
  VariableKind kind;
  std::vector<std::string> categories;  // empty for numeric
};

/// Numeric iff every non-missing cell parses as a finite real.
KindInference infer_kind(std::span<const Cell> column);

/// Default log-scale decision: strictly positive values and a heavy right
/// tail (mean > 3 * median, or max > 100 * upper quartile).
bool detect_log_scale(std::span<const double> values);

/// Builds one spec per raw column with inferred kind, scale and log flag.
/// No target is chosen.
std::vector<VariableSpec> infer_specs(const RawTable& table);

/// Replaces a categorical variable by one binary child per category. The
/// returned children are named "<name>=<category>". The parent is left in
/// place but disabled by fork_variable().
std::vector<VariableSpec> fork_categorical(const VariableSpec& spec, const RawTable& table);

VariableSpec& find_spec(std::vector<VariableSpec>& specs, std::string_view name);
const VariableSpec& find_spec(const std::vector<VariableSpec>& specs, std::string_view name);

/// In-place configuration helpers used by the CLI and the server.
void set_target(std::vector<VariableSpec>& specs, std::string_view name);
void set_enabled(std::vector<VariableSpec>& specs, std::string_view name, bool enabled);
void set_log_scale(std::vector<VariableSpec>& specs, std::string_view name, bool logScale);
void fork_variable(std::vector<VariableSpec>& specs, const RawTable& table, std::string_view name);

/// Parses a cell as a finite real.
std::optional<double> parse_real(std::string_view text);

}  // namespace vnd
