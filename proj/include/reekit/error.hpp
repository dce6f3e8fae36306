#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reekit {

// Closed set of error names. The service exposes these verbatim as ApiError codes.
enum class ErrorCode {
  UnknownStandard,
  InvalidDataFile,
  NonPositiveConcentration,
  TooFewElements,
  DegreeOutOfRange,
  RankDeficient,
  TooFewPoints,
  InvalidWeight,
  EmptyDataset,
  ZeroTotal,
  NoHeader,
  NoElementColumns,
  AmbiguousElementColumn,
  DuplicateSampleIds,
  InvalidPattern,
  NotFound,
  IndexOutOfRange,
  UnknownCategory,
  TooFewPointsForDensity,
  UnsupportedKind,
  InvalidRequest,
  PayloadTooLarge,
  Internal,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::string> detail = {})
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::vector<std::string> detail_;
};

}  // namespace reekit
