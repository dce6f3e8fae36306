#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reekit/domain.hpp"
#include "reekit/error.hpp"
#include "reekit/normalization.hpp"

namespace reekit {

enum class ConcentrationUnit { Ppm, WtPercent };

std::string_view to_string(ConcentrationUnit unit) noexcept;
std::optional<ConcentrationUnit> parse_unit(std::string_view text) noexcept;

struct ImportOptions {
  char delimiter = ',';
  ConcentrationUnit unit = ConcentrationUnit::Ppm;
  NonPositivePolicy nonpositive = NonPositivePolicy::Reject;
  std::string source_name;
};

struct RowRejection {
  std::size_t line;  // 1-based line in the input
  ErrorCode code;
  std::string reason;
};

struct ImportReport {
  std::string dataset_id;
  std::size_t rows_accepted = 0;
  std::vector<RowRejection> rows_rejected;
  std::vector<std::string> detected_elements;
  std::vector<std::string> detected_categories;
  ConcentrationUnit unit_assumption = ConcentrationUnit::Ppm;
  std::vector<std::string> notes;
};

struct ImportResult {
  Dataset dataset;
  ImportReport report;
};

// Header-driven CSV import.
//  - Element columns: `La`, `la`, `La_ppm`, `La (ppm)`, `La [ppm]`; `La_wt%`
//    style columns are converted from wt%. Two columns for one element raise
//    AmbiguousElementColumn.
//  - Uncertainty columns: `La_sd`, `La_1s`, `La_err`, `La_sigma`, read as 1 sigma.
//  - The first column named sample, sample_id or id holds sample ids;
//    otherwise the 1-based data row index is used.
//  - Every other column is a category.
//  - Empty/NA cells are absent. `<x` cells are below detection: absent, or x/2
//    under replace-half-detection-limit.
//  - Values <= 0 reject the row under Reject and become absent otherwise.
// Rows that fail pattern invariants are listed in the report; the import only
// fails as a whole for NoHeader, NoElementColumns, AmbiguousElementColumn,
// DuplicateSampleIds and InvalidDataFile (input not UTF-8).
ImportResult parse_csv(std::string_view bytes, const ImportOptions& options = {});

}  // namespace reekit
