#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vnd {

using Cell = std::optional<std::string>;

/// Untyped table as read from disk. Cells are trimmed; missing values are
/// represented by std::nullopt.
struct RawTable {
  std::vector<std::string> columnNames;
  std::vector<std::vector<Cell>> cells;  // row-major

  std::size_t rowCount() const { return cells.size(); }
  std::size_t columnCount() const { return columnNames.size(); }

  std::optional<std::size_t> columnIndex(std::string_view name) const;
  std::vector<Cell> column(std::size_t index) const;
};

/// True for the tokens treated as a missing value: "", NA, NaN, null
/// (case-insensitive, after trimming).
bool is_missing_token(std::string_view token);

RawTable load_csv(std::string_view text);
RawTable load_csv(std::istream& in);
RawTable load_csv_file(const std::string& path);

}  // namespace vnd
