#include "vnd/csv.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "vnd/error.hpp"

namespace vnd {
namespace {

std::string trim(std::string_view s) {
  auto first = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  auto last = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
  return first < last ? std::string(first, last) : std::string();
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
           return std::tolower(x) == std::tolower(y);
         });
}

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

// RFC-4180 tokenizer. Quoted fields may contain commas, newlines and "".
std::vector<Record> tokenize(std::string_view text) {
  std::vector<Record> records;
  Record current;
  std::string field;
  bool inQuotes = false;
  bool fieldWasQuoted = false;
  std::size_t line = 1;
  std::size_t quoteLine = 0;
  current.line = line;

  auto endField = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    fieldWasQuoted = false;
  };
  auto endRecord = [&] {
    endField();
    // A blank line yields one empty field; skip those entirely.
    const bool blank = current.fields.size() == 1 && trim(current.fields[0]).empty();
    if (!blank) records.push_back(std::move(current));
    current = Record{};
    current.line = line;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (inQuotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          inQuotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!trim(field).empty() || fieldWasQuoted) {
          throw CsvError(ErrorCode::MalformedCsv, "unexpected quote inside unquoted field", line);
        }
        field.clear();
        inQuotes = true;
        fieldWasQuoted = true;
        quoteLine = line;
        break;
      case ',':
        endField();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        endRecord();
        break;
      default:
        if (fieldWasQuoted && !std::isspace(static_cast<unsigned char>(ch))) {
          throw CsvError(ErrorCode::MalformedCsv, "text after closing quote", line);
        }
        field.push_back(ch);
    }
  }
  if (inQuotes) {
    throw CsvError(ErrorCode::MalformedCsv, "unbalanced quote", quoteLine);
  }
  if (!field.empty() || !current.fields.empty() || fieldWasQuoted) endRecord();
  return records;
}

}  // namespace

bool is_missing_token(std::string_view token) {
  const std::string t = trim(token);
  return t.empty() || iequals(t, "NA") || iequals(t, "NaN") || iequals(t, "null");
}

std::optional<std::size_t> RawTable::columnIndex(std::string_view name) const {
  auto it = std::find(columnNames.begin(), columnNames.end(), name);
  if (it == columnNames.end()) return std::nullopt;
  return static_cast<std::size_t>(it - columnNames.begin());
}

std::vector<Cell> RawTable::column(std::size_t index) const {
  std::vector<Cell> out;
  out.reserve(cells.size());
  for (const auto& row : cells) out.push_back(row.at(index));
  return out;
}

RawTable load_csv(std::string_view text) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  auto records = tokenize(text);
  if (records.empty()) throw CsvError(ErrorCode::EmptyTable, "no header row", 1);

  RawTable table;
  std::set<std::string> seen;
  for (const auto& name : records.front().fields) {
    std::string trimmed = trim(name);
    if (!seen.insert(trimmed).second) {
      throw CsvError(ErrorCode::DuplicateColumn, "duplicate column '" + trimmed + "'",
                     records.front().line);
    }
    table.columnNames.push_back(std::move(trimmed));
  }

  const std::size_t width = table.columnNames.size();
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != width) {
      throw CsvError(ErrorCode::MalformedCsv,
                     "row at line " + std::to_string(rec.line) + " has " +
                         std::to_string(rec.fields.size()) + " fields, expected " +
                         std::to_string(width),
                     rec.line);
    }
    std::vector<Cell> row;
    row.reserve(width);
    for (const auto& f : rec.fields) {
      if (is_missing_token(f)) {
        row.emplace_back(std::nullopt);
      } else {
        row.emplace_back(trim(f));
      }
    }
    table.cells.push_back(std::move(row));
  }
  if (table.cells.empty()) throw CsvError(ErrorCode::EmptyTable, "no data rows", records.front().line);
  return table;
}

RawTable load_csv(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return load_csv(std::string_view(text));
}

RawTable load_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  return load_csv(in);
}

}  // namespace vnd
