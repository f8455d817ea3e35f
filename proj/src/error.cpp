#include "crimepat/error.hpp"

namespace crimepat {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::FileUnreadable: return "FileUnreadable";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::DuplicateNeighborhood: return "DuplicateNeighborhood";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::UnmappedCategory: return "UnmappedCategory";
    case ErrorCode::RejectionThresholdExceeded: return "RejectionThresholdExceeded";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::InsufficientLocations: return "InsufficientLocations";
    case ErrorCode::EmptyTransactionList: return "EmptyTransactionList";
    case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::DatasetTooSmall: return "DatasetTooSmall";
    case ErrorCode::AllZeroCounts: return "AllZeroCounts";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::TooFewRecords: return "TooFewRecords";
    case ErrorCode::UnmatchedNeighborhood: return "UnmatchedNeighborhood";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ModelFormat: return "ModelFormat";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace crimepat
