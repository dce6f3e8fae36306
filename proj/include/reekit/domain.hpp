#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace reekit {

// Lanthanides La..Lu without Pm, in order of decreasing ionic radius, followed
// by the extended members accepted on ingest but never fitted.
enum class Element : std::uint8_t { La, Ce, Pr, Nd, Sm, Eu, Gd, Tb, Dy, Ho, Er, Tm, Yb, Lu, Y, Sc };

inline constexpr std::size_t kCanonicalCount = 14;

inline constexpr std::array<Element, kCanonicalCount> kCanonicalElements = {
    Element::La, Element::Ce, Element::Pr, Element::Nd, Element::Sm, Element::Eu, Element::Gd,
    Element::Tb, Element::Dy, Element::Ho, Element::Er, Element::Tm, Element::Yb, Element::Lu};

inline constexpr std::array<Element, 16> kAllElements = {
    Element::La, Element::Ce, Element::Pr, Element::Nd, Element::Sm, Element::Eu,
    Element::Gd, Element::Tb, Element::Dy, Element::Ho, Element::Er, Element::Tm,
    Element::Yb, Element::Lu, Element::Y,  Element::Sc};

constexpr std::size_t index_of(Element e) noexcept { return static_cast<std::size_t>(e); }
constexpr bool is_canonical(Element e) noexcept { return index_of(e) < kCanonicalCount; }

std::string_view symbol(Element e) noexcept;

// Case-insensitive symbol lookup. Pm and anything outside the 16 known symbols
// yield nullopt.
std::optional<Element> parse_element(std::string_view text) noexcept;

using ElementSet = std::set<Element>;

// "Ce;Eu" style list in canonical order; empty set gives "".
std::string format_elements(const ElementSet& elements, char separator = ';');

// Accepts ',' or ';' separated symbols. Throws Error(InvalidRequest) on an unknown symbol.
ElementSet parse_element_list(std::string_view text);

class RadiiTable {
 public:
  // Throws Error(InvalidDataFile) unless radii are strictly decreasing and
  // inside the [90, 130] pm band.
  RadiiTable(const std::array<double, kCanonicalCount>& radius_pm, std::string source_label);

  double radius(Element e) const;
  const std::array<double, kCanonicalCount>& values() const noexcept { return radius_pm_; }
  Eigen::VectorXd as_vector() const;
  const std::string& source_label() const noexcept { return source_label_; }

 private:
  std::array<double, kCanonicalCount> radius_pm_;
  std::string source_label_;
};

class ReferenceStandard {
 public:
  // Throws Error(InvalidDataFile) if a canonical element is missing or not > 0.
  ReferenceStandard(std::string name, std::map<Element, double> values_ppm, std::string citation);

  const std::string& name() const noexcept { return name_; }
  const std::string& citation() const noexcept { return citation_; }
  const std::map<Element, double>& values_ppm() const noexcept { return values_ppm_; }
  bool covers(Element e) const noexcept { return values_ppm_.count(e) != 0; }
  double value(Element e) const;

 private:
  std::string name_;
  std::map<Element, double> values_ppm_;
  std::string citation_;
};

inline constexpr std::string_view kUnknownCategory = "UNKNOWN";

// One sample. Absent elements are simply missing from the concentration map.
struct ReePattern {
  std::string sample_id;
  std::map<Element, double> concentrations_ppm;
  std::map<std::string, std::string> categories;
  std::map<Element, double> uncertainties_ppm;

  std::optional<double> concentration(Element e) const;
  std::size_t canonical_count() const noexcept;

  bool operator==(const ReePattern&) const = default;
};

inline constexpr std::size_t kMinimumElements = 5;

// Throws InvalidPattern (empty id, negative or non-finite values) or TooFewElements.
void validate_pattern(const ReePattern& pattern);

struct Provenance {
  std::string source_name;
  std::string imported_at;  // set by the store; empty for freshly parsed data
};

struct Dataset {
  std::string dataset_id;
  std::vector<ReePattern> patterns;
  std::vector<std::string> category_schema;
  Provenance provenance;

  const ReePattern* find(std::string_view sample_id) const noexcept;
  std::set<std::string> category_values(const std::string& category) const;

  // Content equality; the import timestamp is not content.
  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.dataset_id == b.dataset_id && a.patterns == b.patterns &&
           a.category_schema == b.category_schema &&
           a.provenance.source_name == b.provenance.source_name;
  }
};

// Validates every pattern, rejects duplicate sample ids (DuplicateSampleIds),
// derives the category schema in first-seen order, fills missing category
// values with UNKNOWN and assigns the content-hash id.
Dataset make_dataset(std::vector<ReePattern> patterns, std::string source_name);

// Canonical CSV form of a dataset. Parsing it back yields an equal dataset.
std::string serialize_dataset(const Dataset& dataset);

// Bundled tables.
std::vector<std::string> builtin_reference_names();
const ReferenceStandard& builtin_reference(std::string_view name);
const RadiiTable& canonical_radii();

// Data file format: `element,value,unit,citation`; units ppm|ppb|wt% for
// standards and pm|A for radii.
ReferenceStandard parse_reference_csv(std::string_view text, std::string name);
RadiiTable parse_radii_csv(std::string_view text, std::string source_label);
ReferenceStandard load_reference_file(const std::filesystem::path& path);

// Resolves a builtin name first, then a readable CSV path.
ReferenceStandard resolve_reference(std::string_view name_or_path);

}  // namespace reekit
