#include "reekit/error.hpp"

namespace reekit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownStandard: return "UnknownStandard";
    case ErrorCode::InvalidDataFile: return "InvalidDataFile";
    case ErrorCode::NonPositiveConcentration: return "NonPositiveConcentration";
    case ErrorCode::TooFewElements: return "TooFewElements";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::ZeroTotal: return "ZeroTotal";
    case ErrorCode::NoHeader: return "NoHeader";
    case ErrorCode::NoElementColumns: return "NoElementColumns";
    case ErrorCode::AmbiguousElementColumn: return "AmbiguousElementColumn";
    case ErrorCode::DuplicateSampleIds: return "DuplicateSampleIds";
    case ErrorCode::InvalidPattern: return "InvalidPattern";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::TooFewPointsForDensity: return "TooFewPointsForDensity";
    case ErrorCode::UnsupportedKind: return "UnsupportedKind";
    case ErrorCode::InvalidRequest: return "InvalidRequest";
    case ErrorCode::PayloadTooLarge: return "PayloadTooLarge";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace reekit
