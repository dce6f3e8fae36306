#include "reekit/ingestion.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

#include "reekit/csv.hpp"

namespace reekit {

std::string_view to_string(ConcentrationUnit unit) noexcept {
  return unit == ConcentrationUnit::Ppm ? "ppm" : "wt%";
}

std::optional<ConcentrationUnit> parse_unit(std::string_view text) noexcept {
  if (text == "ppm") return ConcentrationUnit::Ppm;
  if (text == "wt%" || text == "wt") return ConcentrationUnit::WtPercent;
  return std::nullopt;
}

namespace {

constexpr double kPpmPerWtPercent = 1e4;

enum class ColumnRole { Sample, Value, Uncertainty, Category };

struct Column {
  ColumnRole role = ColumnRole::Category;
  Element element = Element::La;
  double scale = 1.0;  // to ppm
  std::string name;
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool valid_utf8(std::string_view s) noexcept {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra = 0;
    if (c < 0x80) {
      extra = 0;
    } else if ((c >> 5) == 0x6 && c >= 0xC2) {
      extra = 1;
    } else if ((c >> 4) == 0xE) {
      extra = 2;
    } else if ((c >> 3) == 0x1E && c <= 0xF4) {
      extra = 3;
    } else {
      return false;
    }
    if (extra > 0 && i + extra >= s.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
    }
    i += extra + 1;
  }
  return true;
}

const std::regex& value_header() {
  static const std::regex re(R"(^([a-z]{1,2})(?:[ _-]?(ppm|\(ppm\)|\[ppm\]|wt%|\(wt%\)|\[wt%\]|pct))?$)");
  return re;
}

const std::regex& uncertainty_header() {
  static const std::regex re(
      R"(^([a-z]{1,2})[ _-]?(sd|1sd|1s|1sigma|sigma|err|error|unc)(?:[ _-]?(?:ppm|\(ppm\)|\[ppm\]))?$)");
  return re;
}

bool is_sample_header(std::string_view lowered) {
  return lowered == "sample" || lowered == "sample_id" || lowered == "id" ||
         lowered == "sample id" || lowered == "sampleid";
}

bool is_missing_cell(std::string_view lowered) {
  return lowered.empty() || lowered == "na" || lowered == "n/a" || lowered == "nan" ||
         lowered == "null" || lowered == "-" || lowered == "--";
}

struct RowFailure {
  ErrorCode code;
  std::string reason;
};

}  // namespace

ImportResult parse_csv(std::string_view bytes, const ImportOptions& options) {
  if (!valid_utf8(bytes)) throw Error(ErrorCode::InvalidDataFile, "input is not valid UTF-8");

  std::vector<std::size_t> lines;
  const auto records = csv::read_records(bytes, options.delimiter, &lines);
  if (records.empty()) throw Error(ErrorCode::NoHeader, "input is empty");

  // Classify header cells.
  const auto& header = records.front();
  std::vector<Column> columns(header.size());
  std::map<Element, std::size_t> value_columns;
  std::map<Element, std::size_t> sd_columns;
  bool have_sample = false;
  std::size_t numeric_header_cells = 0;
  const double unit_scale =
      options.unit == ConcentrationUnit::WtPercent ? kPpmPerWtPercent : 1.0;

  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name(csv::trim(header[i]));
    const std::string key = lower(name);
    auto& col = columns[i];
    col.name = name;
    if (csv::parse_number(key)) ++numeric_header_cells;

    std::smatch m;
    if (!have_sample && is_sample_header(key)) {
      col.role = ColumnRole::Sample;
      have_sample = true;
    } else if (std::regex_match(key, m, value_header()) && parse_element(m[1].str())) {
      const Element e = *parse_element(m[1].str());
      const std::string suffix = m[2].str();
      col.role = ColumnRole::Value;
      col.element = e;
      col.scale = suffix.empty() ? unit_scale
                  : (suffix.find("wt%") != std::string::npos || suffix == "pct") ? kPpmPerWtPercent
                                                                                  : 1.0;
      if (!value_columns.emplace(e, i).second) {
        throw Error(ErrorCode::AmbiguousElementColumn,
                    fmt::format("columns '{}' and '{}' both map to {}",
                                columns[value_columns[e]].name, name, symbol(e)),
                    {columns[value_columns[e]].name, name});
      }
    } else if (std::regex_match(key, m, uncertainty_header()) && parse_element(m[1].str())) {
      const Element e = *parse_element(m[1].str());
      col.role = ColumnRole::Uncertainty;
      col.element = e;
      col.scale = unit_scale;
      if (!sd_columns.emplace(e, i).second) {
        throw Error(ErrorCode::AmbiguousElementColumn,
                    fmt::format("two uncertainty columns for {}", symbol(e)));
      }
    }
  }

  if (value_columns.empty()) {
    if (numeric_header_cells > 0) {
      throw Error(ErrorCode::NoHeader, "first row holds data, not column names");
    }
    throw Error(ErrorCode::NoElementColumns, "no column names a rare earth element");
  }

  ImportReport report;
  report.unit_assumption = options.unit;
  for (Element e : kAllElements) {
    if (value_columns.count(e)) report.detected_elements.emplace_back(symbol(e));
  }
  for (const auto& c : columns) {
    if (c.role == ColumnRole::Category) report.detected_categories.push_back(c.name);
  }
  if (!have_sample) report.notes.emplace_back("no sample column; rows numbered from 1");

  std::vector<ReePattern> patterns;
  std::vector<std::size_t> pattern_lines;
  std::size_t below_detection = 0;
  std::size_t dropped_nonpositive = 0;

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& row = records[r];
    const std::size_t line = lines[r];
    ReePattern p;
    std::optional<RowFailure> failure;

    if (row.size() > header.size()) {
      failure = RowFailure{ErrorCode::InvalidPattern,
                           fmt::format("{} fields, header has {}", row.size(), header.size())};
    }
    for (std::size_t i = 0; i < columns.size() && !failure; ++i) {
      const std::string_view raw = i < row.size() ? csv::trim(row[i]) : std::string_view{};
      const auto& col = columns[i];
      switch (col.role) {
        case ColumnRole::Sample:
          p.sample_id = std::string(raw);
          break;
        case ColumnRole::Category:
          if (!raw.empty()) p.categories.emplace(col.name, std::string(raw));
          break;
        case ColumnRole::Value: {
          if (is_missing_cell(lower(raw))) break;
          if (raw.front() == '<') {
            const auto limit = csv::parse_number(raw.substr(1));
            if (!limit || *limit <= 0.0) {
              failure = RowFailure{ErrorCode::InvalidPattern,
                                   fmt::format("{}: bad detection limit '{}'", col.name, raw)};
              break;
            }
            ++below_detection;
            if (options.nonpositive == NonPositivePolicy::ReplaceHalfDetectionLimit) {
              p.concentrations_ppm[col.element] = 0.5 * *limit * col.scale;
            }
            break;
          }
          const auto value = csv::parse_number(raw);
          if (!value) {
            failure = RowFailure{ErrorCode::InvalidPattern,
                                 fmt::format("{}: '{}' is not a number", col.name, raw)};
            break;
          }
          if (*value <= 0.0) {
            if (options.nonpositive == NonPositivePolicy::Reject) {
              failure = RowFailure{ErrorCode::NonPositiveConcentration,
                                   fmt::format("{} = {} is not positive", symbol(col.element), raw)};
            } else {
              ++dropped_nonpositive;
            }
            break;
          }
          p.concentrations_ppm[col.element] = *value * col.scale;
          break;
        }
        case ColumnRole::Uncertainty: {
          if (is_missing_cell(lower(raw))) break;
          const auto value = csv::parse_number(raw);
          if (!value || *value < 0.0) {
            failure = RowFailure{ErrorCode::InvalidPattern,
                                 fmt::format("{}: '{}' is not a valid uncertainty", col.name, raw)};
            break;
          }
          p.uncertainties_ppm[col.element] = *value * col.scale;
          break;
        }
      }
    }
    if (!have_sample && !failure) p.sample_id = std::to_string(r);
    if (!failure) {
      try {
        validate_pattern(p);
      } catch (const Error& e) {
        failure = RowFailure{e.code(), e.what()};
      }
    }
    if (failure) {
      report.rows_rejected.push_back({line, failure->code, failure->reason});
      continue;
    }
    patterns.push_back(std::move(p));
    pattern_lines.push_back(line);
  }

  {
    std::map<std::string, std::size_t> seen;
    std::vector<std::string> duplicates;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      const auto [it, inserted] = seen.emplace(patterns[i].sample_id, pattern_lines[i]);
      if (!inserted) {
        duplicates.push_back(fmt::format("'{}' on lines {} and {}", patterns[i].sample_id,
                                         it->second, pattern_lines[i]));
      }
    }
    if (!duplicates.empty()) {
      throw Error(ErrorCode::DuplicateSampleIds, "sample ids are not unique", duplicates);
    }
  }

  if (below_detection > 0) {
    report.notes.push_back(fmt::format(
        "{} below-detection cells {}", below_detection,
        options.nonpositive == NonPositivePolicy::ReplaceHalfDetectionLimit
            ? "replaced by half the detection limit"
            : "treated as absent"));
  }
  if (dropped_nonpositive > 0) {
    report.notes.push_back(
        fmt::format("{} non-positive cells treated as absent", dropped_nonpositive));
  }

  ImportResult result{make_dataset(std::move(patterns), options.source_name), std::move(report)};
  result.report.dataset_id = result.dataset.dataset_id;
  result.report.rows_accepted = result.dataset.patterns.size();
  return result;
}

}  // namespace reekit
