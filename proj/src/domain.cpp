#include "reekit/domain.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "reekit/bundled_data.hpp"
#include "reekit/csv.hpp"
#include "reekit/error.hpp"
#include "reekit/hash.hpp"

namespace reekit {

namespace {

constexpr std::array<std::string_view, 16> kSymbols = {"La", "Ce", "Pr", "Nd", "Sm", "Eu",
                                                       "Gd", "Tb", "Dy", "Ho", "Er", "Tm",
                                                       "Yb", "Lu", "Y",  "Sc"};

bool iequals(std::string_view a, std::string_view b) noexcept {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

struct DataRow {
  Element element;
  double value;
  std::string unit;
  std::string citation;
};

std::vector<DataRow> read_data_rows(std::string_view text, std::string_view what) {
  const auto records = csv::read_records(text);
  if (records.empty()) throw Error(ErrorCode::InvalidDataFile, fmt::format("{}: empty file", what));
  const auto& header = records.front();
  if (header.size() < 3 || !iequals(csv::trim(header[0]), "element") ||
      !iequals(csv::trim(header[1]), "value") || !iequals(csv::trim(header[2]), "unit")) {
    throw Error(ErrorCode::InvalidDataFile,
                fmt::format("{}: expected header element,value,unit,citation", what));
  }
  std::vector<DataRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.size() < 3) {
      throw Error(ErrorCode::InvalidDataFile, fmt::format("{}: row {} is short", what, i + 1));
    }
    const auto element = parse_element(csv::trim(r[0]));
    const auto value = csv::parse_number(r[1]);
    if (!element || !value) {
      throw Error(ErrorCode::InvalidDataFile, fmt::format("{}: bad row {}", what, i + 1));
    }
    rows.push_back({*element, *value, std::string(csv::trim(r[2])),
                    r.size() > 3 ? std::string(csv::trim(r[3])) : std::string{}});
  }
  return rows;
}

}  // namespace

std::string_view symbol(Element e) noexcept { return kSymbols[index_of(e)]; }

std::optional<Element> parse_element(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kSymbols.size(); ++i) {
    if (iequals(text, kSymbols[i])) return static_cast<Element>(i);
  }
  return std::nullopt;
}

std::string format_elements(const ElementSet& elements, char separator) {
  std::string out;
  for (Element e : elements) {
    if (!out.empty()) out.push_back(separator);
    out += symbol(e);
  }
  return out;
}

ElementSet parse_element_list(std::string_view text) {
  ElementSet out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(",;", start);
    if (end == std::string_view::npos) end = text.size();
    const auto token = csv::trim(text.substr(start, end - start));
    if (!token.empty()) {
      const auto e = parse_element(token);
      if (!e) throw Error(ErrorCode::InvalidRequest, fmt::format("unknown element '{}'", token));
      out.insert(*e);
    }
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------

RadiiTable::RadiiTable(const std::array<double, kCanonicalCount>& radius_pm,
                       std::string source_label)
    : radius_pm_(radius_pm), source_label_(std::move(source_label)) {
  for (std::size_t i = 0; i < kCanonicalCount; ++i) {
    if (!(radius_pm_[i] >= 90.0 && radius_pm_[i] <= 130.0)) {
      throw Error(ErrorCode::InvalidDataFile,
                  fmt::format("radius of {} ({} pm) outside [90, 130] pm",
                              symbol(kCanonicalElements[i]), radius_pm_[i]));
    }
    if (i > 0 && !(radius_pm_[i] < radius_pm_[i - 1])) {
      throw Error(ErrorCode::InvalidDataFile,
                  fmt::format("radii must decrease strictly from La to Lu (at {})",
                              symbol(kCanonicalElements[i])));
    }
  }
}

double RadiiTable::radius(Element e) const {
  if (!is_canonical(e)) {
    throw Error(ErrorCode::InvalidRequest, fmt::format("no fitting radius for {}", symbol(e)));
  }
  return radius_pm_[index_of(e)];
}

Eigen::VectorXd RadiiTable::as_vector() const {
  return Eigen::Map<const Eigen::VectorXd>(radius_pm_.data(), kCanonicalCount);
}

ReferenceStandard::ReferenceStandard(std::string name, std::map<Element, double> values_ppm,
                                     std::string citation)
    : name_(std::move(name)), values_ppm_(std::move(values_ppm)), citation_(std::move(citation)) {
  for (Element e : kCanonicalElements) {
    const auto it = values_ppm_.find(e);
    if (it == values_ppm_.end() || !(it->second > 0.0) || !std::isfinite(it->second)) {
      throw Error(ErrorCode::InvalidDataFile,
                  fmt::format("standard '{}' needs a positive value for {}", name_, symbol(e)));
    }
  }
}

double ReferenceStandard::value(Element e) const {
  const auto it = values_ppm_.find(e);
  if (it == values_ppm_.end()) {
    throw Error(ErrorCode::InvalidRequest,
                fmt::format("standard '{}' has no value for {}", name_, symbol(e)));
  }
  return it->second;
}

// ---------------------------------------------------------------------------

std::optional<double> ReePattern::concentration(Element e) const {
  const auto it = concentrations_ppm.find(e);
  if (it == concentrations_ppm.end()) return std::nullopt;
  return it->second;
}

std::size_t ReePattern::canonical_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      concentrations_ppm.begin(), concentrations_ppm.end(),
      [](const auto& kv) { return is_canonical(kv.first); }));
}

void validate_pattern(const ReePattern& pattern) {
  if (pattern.sample_id.empty()) throw Error(ErrorCode::InvalidPattern, "empty sample id");
  for (const auto& [e, c] : pattern.concentrations_ppm) {
    if (!std::isfinite(c) || c < 0.0) {
      throw Error(ErrorCode::InvalidPattern,
                  fmt::format("sample '{}': {} concentration {} is negative or not finite",
                              pattern.sample_id, symbol(e), c));
    }
  }
  if (pattern.canonical_count() < kMinimumElements) {
    throw Error(ErrorCode::TooFewElements,
                fmt::format("sample '{}' has {} lanthanides, need at least {}",
                            pattern.sample_id, pattern.canonical_count(), kMinimumElements));
  }
}

const ReePattern* Dataset::find(std::string_view sample_id) const noexcept {
  for (const auto& p : patterns) {
    if (p.sample_id == sample_id) return &p;
  }
  return nullptr;
}

std::set<std::string> Dataset::category_values(const std::string& category) const {
  std::set<std::string> values;
  for (const auto& p : patterns) {
    const auto it = p.categories.find(category);
    values.insert(it == p.categories.end() ? std::string(kUnknownCategory) : it->second);
  }
  return values;
}

Dataset make_dataset(std::vector<ReePattern> patterns, std::string source_name) {
  Dataset ds;
  std::set<std::string> seen;
  std::vector<std::string> duplicates;
  for (const auto& p : patterns) {
    validate_pattern(p);
    if (!seen.insert(p.sample_id).second) duplicates.push_back(p.sample_id);
    for (const auto& [key, value] : p.categories) {
      if (std::find(ds.category_schema.begin(), ds.category_schema.end(), key) ==
          ds.category_schema.end()) {
        ds.category_schema.push_back(key);
      }
    }
  }
  if (!duplicates.empty()) {
    throw Error(ErrorCode::DuplicateSampleIds, "duplicate sample ids", duplicates);
  }
  for (auto& p : patterns) {
    for (const auto& key : ds.category_schema) {
      p.categories.try_emplace(key, std::string(kUnknownCategory));
    }
  }
  ds.patterns = std::move(patterns);
  ds.provenance.source_name = std::move(source_name);
  ds.dataset_id = content_id(serialize_dataset(ds));
  return ds;
}

std::string serialize_dataset(const Dataset& dataset) {
  std::vector<Element> value_columns;
  std::vector<Element> sd_columns;
  for (Element e : kAllElements) {
    const bool any_value = std::any_of(dataset.patterns.begin(), dataset.patterns.end(),
                                       [e](const auto& p) { return p.concentrations_ppm.count(e); });
    const bool any_sd = std::any_of(dataset.patterns.begin(), dataset.patterns.end(),
                                    [e](const auto& p) { return p.uncertainties_ppm.count(e); });
    if (any_value) value_columns.push_back(e);
    if (any_sd) sd_columns.push_back(e);
  }

  std::string out;
  csv::Record header{"sample"};
  for (Element e : value_columns) header.emplace_back(symbol(e));
  for (Element e : sd_columns) header.push_back(fmt::format("{}_sd", symbol(e)));
  for (const auto& c : dataset.category_schema) header.push_back(c);
  out += csv::join_record(header) + "\n";

  for (const auto& p : dataset.patterns) {
    csv::Record row{p.sample_id};
    for (Element e : value_columns) {
      const auto it = p.concentrations_ppm.find(e);
      row.push_back(it == p.concentrations_ppm.end() ? "" : csv::format_number(it->second));
    }
    for (Element e : sd_columns) {
      const auto it = p.uncertainties_ppm.find(e);
      row.push_back(it == p.uncertainties_ppm.end() ? "" : csv::format_number(it->second));
    }
    for (const auto& c : dataset.category_schema) {
      const auto it = p.categories.find(c);
      row.push_back(it == p.categories.end() ? std::string(kUnknownCategory) : it->second);
    }
    out += csv::join_record(row) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

ReferenceStandard parse_reference_csv(std::string_view text, std::string name) {
  std::map<Element, double> values;
  std::string citation;
  for (const auto& row : read_data_rows(text, name)) {
    double scale = 1.0;
    if (iequals(row.unit, "ppb")) {
      scale = 1e-3;
    } else if (iequals(row.unit, "wt%")) {
      scale = 1e4;
    } else if (!iequals(row.unit, "ppm")) {
      throw Error(ErrorCode::InvalidDataFile,
                  fmt::format("{}: unsupported unit '{}'", name, row.unit));
    }
    if (!values.emplace(row.element, row.value * scale).second) {
      throw Error(ErrorCode::InvalidDataFile,
                  fmt::format("{}: {} listed twice", name, symbol(row.element)));
    }
    if (citation.empty()) citation = row.citation;
  }
  return ReferenceStandard(std::move(name), std::move(values), std::move(citation));
}

RadiiTable parse_radii_csv(std::string_view text, std::string source_label) {
  std::array<double, kCanonicalCount> radii{};
  std::array<bool, kCanonicalCount> present{};
  for (const auto& row : read_data_rows(text, source_label)) {
    if (!is_canonical(row.element)) continue;
    double scale = 1.0;
    if (iequals(row.unit, "A") || iequals(row.unit, "angstrom")) {
      scale = 100.0;
    } else if (!iequals(row.unit, "pm")) {
      throw Error(ErrorCode::InvalidDataFile,
                  fmt::format("{}: unsupported unit '{}'", source_label, row.unit));
    }
    radii[index_of(row.element)] = row.value * scale;
    present[index_of(row.element)] = true;
    if (source_label.empty()) source_label = row.citation;
  }
  for (std::size_t i = 0; i < kCanonicalCount; ++i) {
    if (!present[i]) {
      throw Error(ErrorCode::InvalidDataFile,
                  fmt::format("radii table lacks {}", symbol(kCanonicalElements[i])));
    }
  }
  return RadiiTable(radii, std::move(source_label));
}

ReferenceStandard load_reference_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::UnknownStandard, fmt::format("cannot read '{}'", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_reference_csv(buffer.str(), path.stem().string());
}

std::vector<std::string> builtin_reference_names() { return {"chondrite", "MORB", "average-crust"}; }

const ReferenceStandard& builtin_reference(std::string_view name) {
  static const ReferenceStandard chondrite = parse_reference_csv(bundled::kChondriteCsv, "chondrite");
  static const ReferenceStandard morb = parse_reference_csv(bundled::kMorbCsv, "MORB");
  static const ReferenceStandard crust =
      parse_reference_csv(bundled::kAverageCrustCsv, "average-crust");
  if (iequals(name, "chondrite")) return chondrite;
  if (iequals(name, "MORB")) return morb;
  if (iequals(name, "average-crust")) return crust;
  throw Error(ErrorCode::UnknownStandard,
              fmt::format("unknown reference standard '{}' (known: chondrite, MORB, average-crust)",
                          name));
}

const RadiiTable& canonical_radii() {
  static const RadiiTable radii = parse_radii_csv(bundled::kRadiiCsv, "");
  return radii;
}

ReferenceStandard resolve_reference(std::string_view name_or_path) {
  for (const auto& name : builtin_reference_names()) {
    if (iequals(name, name_or_path)) return builtin_reference(name);
  }
  const std::filesystem::path path{std::string(name_or_path)};
  std::error_code ec;
  if (std::filesystem::is_regular_file(path, ec)) return load_reference_file(path);
  return builtin_reference(name_or_path);  // throws UnknownStandard
}

}  // namespace reekit
