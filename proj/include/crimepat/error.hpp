#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crimepat {

enum class ErrorCode {
  MissingColumn,
  FileUnreadable,
  MalformedInput,
  DuplicateNeighborhood,
  OutOfRange,
  UnmappedCategory,
  RejectionThresholdExceeded,
  EmptyDataset,
  InsufficientLocations,
  EmptyTransactionList,
  EmptyTrainingSet,
  DatasetTooSmall,
  AllZeroCounts,
  LengthMismatch,
  EmptyInput,
  EmptyMatrix,
  TooFewRecords,
  UnmatchedNeighborhood,
  InvalidArgument,
  ModelFormat,
};

std::string_view to_string(ErrorCode code) noexcept;

// Data-level failure raised by every module. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace crimepat
