#include "vnd/error.hpp"

namespace vnd {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedCsv: return "MalformedCsv";
    case ErrorCode::DuplicateColumn: return "DuplicateColumn";
    case ErrorCode::EmptyTable: return "EmptyTable";
    case ErrorCode::AllMissing: return "AllMissing";
    case ErrorCode::NotCategorical: return "NotCategorical";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::NoTarget: return "NoTarget";
    case ErrorCode::NoEnabledInputs: return "NoEnabledInputs";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::NoPositiveNodes: return "NoPositiveNodes";
    case ErrorCode::EmptyFilter: return "EmptyFilter";
    case ErrorCode::BadSampleCount: return "BadSampleCount";
    case ErrorCode::TrainingInProgress: return "TrainingInProgress";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::PayloadTooLarge: return "PayloadTooLarge";
    case ErrorCode::TargetLocked: return "TargetLocked";
  }
  return "Unknown";
}

}  // namespace vnd
