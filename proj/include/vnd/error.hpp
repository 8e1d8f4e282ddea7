#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vnd {

enum class ErrorCode {
  MalformedCsv,
  DuplicateColumn,
  EmptyTable,
  AllMissing,
  NotCategorical,
  UnknownVariable,
  NoTarget,
  NoEnabledInputs,
  InvalidArgument,
  DimensionMismatch,
  NonFiniteLoss,
  NoPositiveNodes,
  EmptyFilter,
  BadSampleCount,
  TrainingInProgress,
  UnknownModel,
  UnknownSession,
  PayloadTooLarge,
  TargetLocked,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every recoverable failure in the library. The code
/// is stable and is what the server and CLI map onto status/exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the CSV reader; carries the 1-based line of the offending record.
class CsvError : public Error {
 public:
  CsvError(ErrorCode code, const std::string& message, std::size_t line)
      : Error(code, message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace vnd
