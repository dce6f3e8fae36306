#include "reekit/metrics.hpp"

#include <fmt/format.h>

#include <cctype>
#include <cmath>

#include "reekit/csv.hpp"
#include "reekit/error.hpp"

namespace reekit {

double atomic_mass(Element e) noexcept {
  switch (e) {
    case Element::La: return 138.905;
    case Element::Ce: return 140.116;
    case Element::Pr: return 140.908;
    case Element::Nd: return 144.242;
    case Element::Sm: return 150.36;
    case Element::Eu: return 151.964;
    case Element::Gd: return 157.25;
    case Element::Tb: return 158.925;
    case Element::Dy: return 162.500;
    case Element::Ho: return 164.930;
    case Element::Er: return 167.259;
    case Element::Tm: return 168.934;
    case Element::Yb: return 173.045;
    case Element::Lu: return 174.967;
    case Element::Y: return 88.906;
    case Element::Sc: return 44.956;
  }
  return 0.0;
}

std::string MetricsConfig::describe() const {
  return fmt::format("ce_oxide={};pr_oxide={};ndpr_basis={};hree_start={}",
                     cerium == CeriumOxide::CeO2 ? "CeO2" : "Ce2O3",
                     praseodymium == PraseodymiumOxide::Pr6O11 ? "Pr6O11" : "Pr2O3",
                     ndpr_basis == NdPrBasis::Oxide ? "oxide" : "metal", symbol(hree_start));
}

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::optional<CeriumOxide> parse_cerium_oxide(std::string_view text) noexcept {
  const auto t = lower(text);
  if (t == "ce2o3") return CeriumOxide::Ce2O3;
  if (t == "ceo2") return CeriumOxide::CeO2;
  return std::nullopt;
}

std::optional<PraseodymiumOxide> parse_praseodymium_oxide(std::string_view text) noexcept {
  const auto t = lower(text);
  if (t == "pr2o3") return PraseodymiumOxide::Pr2O3;
  if (t == "pr6o11") return PraseodymiumOxide::Pr6O11;
  return std::nullopt;
}

std::optional<NdPrBasis> parse_ndpr_basis(std::string_view text) noexcept {
  const auto t = lower(text);
  if (t == "metal") return NdPrBasis::Metal;
  if (t == "oxide") return NdPrBasis::Oxide;
  return std::nullopt;
}

double oxide_factor(Element e, const MetricsConfig& config) {
  // MxOy per x metal atoms.
  double metals = 2.0;
  double oxygens = 3.0;
  if (e == Element::Ce && config.cerium == CeriumOxide::CeO2) {
    metals = 1.0;
    oxygens = 2.0;
  } else if (e == Element::Pr && config.praseodymium == PraseodymiumOxide::Pr6O11) {
    metals = 6.0;
    oxygens = 11.0;
  }
  const double metal_mass = metals * atomic_mass(e);
  return (metal_mass + oxygens * kOxygenMass) / metal_mass;
}

namespace {

double mass(const ReePattern& p, Element e, const MetricsConfig& config, bool as_oxide) {
  const auto c = p.concentration(e);
  if (!c) return 0.0;
  return as_oxide ? *c * oxide_factor(e, config) : *c;
}

}  // namespace

double treo(const ReePattern& pattern, const MetricsConfig& config) {
  double total = 0.0;
  for (Element e : kCanonicalElements) total += mass(pattern, e, config, true);
  return total;
}

double ndpr(const ReePattern& pattern, const MetricsConfig& config) {
  const bool oxide = config.ndpr_basis == NdPrBasis::Oxide;
  double total = 0.0;
  for (Element e : kCanonicalElements) total += mass(pattern, e, config, oxide);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::ZeroTotal,
                fmt::format("sample '{}': total REE is zero", pattern.sample_id));
  }
  return (mass(pattern, Element::Nd, config, oxide) + mass(pattern, Element::Pr, config, oxide)) /
         total;
}

double lree_hree(const ReePattern& pattern, const MetricsConfig& config) {
  double light = 0.0;
  double heavy = 0.0;
  for (Element e : kCanonicalElements) {
    (index_of(e) < index_of(config.hree_start) ? light : heavy) += mass(pattern, e, config, false);
  }
  if (!(heavy > 0.0)) {
    throw Error(ErrorCode::ZeroTotal, fmt::format("sample '{}': HREE total is zero", pattern.sample_id));
  }
  return light / heavy;
}

ShapeRatios shape_ratios(const NormalizedPattern& pattern) {
  ShapeRatios out;
  for (const auto& r : kShapeRatios) {
    const auto a = pattern.y(r.numerator);
    const auto b = pattern.y(r.denominator);
    if (a && b) {
      out.values.emplace(r.name, std::exp(*a - *b));
    } else {
      out.notes.push_back(fmt::format("{} omitted: {} not available", r.name,
                                      a ? symbol(r.denominator) : symbol(r.numerator)));
    }
  }
  return out;
}

BasketValue basket_value(const ReePattern& pattern, const PriceTable& prices,
                         const MetricsConfig& config) {
  BasketValue out;
  for (Element e : kCanonicalElements) {
    const double oxide_ppm = mass(pattern, e, config, true);
    if (oxide_ppm == 0.0) continue;
    const auto it = prices.find(e);
    if (it == prices.end()) {
      out.unpriced.push_back(e);
      continue;
    }
    out.usd_per_tonne += oxide_ppm * 1e-6 * 1000.0 * it->second;
  }
  return out;
}

PriceTable parse_price_csv(std::string_view text) {
  const auto records = csv::read_records(text);
  if (records.empty()) throw Error(ErrorCode::InvalidDataFile, "price file is empty");
  PriceTable prices;
  std::size_t first = 0;
  if (!records[0].empty() && !parse_element(csv::trim(records[0][0]))) first = 1;  // header
  for (std::size_t i = first; i < records.size(); ++i) {
    const auto& r = records[i];
    const auto e = r.empty() ? std::nullopt : parse_element(csv::trim(r[0]));
    const auto price = r.size() < 2 ? std::nullopt : csv::parse_number(r[1]);
    if (!e || !price || *price < 0.0) {
      throw Error(ErrorCode::InvalidDataFile, fmt::format("price file: bad row {}", i + 1));
    }
    if (!prices.emplace(*e, *price).second) {
      throw Error(ErrorCode::InvalidDataFile,
                  fmt::format("price file: {} listed twice", symbol(*e)));
    }
  }
  return prices;
}

MetricReport metric_report(const ReePattern& pattern, const ReferenceStandard& standard,
                           const MetricsConfig& config, const PriceTable* prices) {
  MetricReport r;
  r.sample_id = pattern.sample_id;
  r.treo_ppm = treo(pattern, config);
  try {
    r.ndpr_fraction = ndpr(pattern, config);
  } catch (const Error& e) {
    r.notes.emplace_back(e.what());
  }
  try {
    r.lree_hree_ratio = lree_hree(pattern, config);
  } catch (const Error& e) {
    r.notes.emplace_back(e.what());
  }
  try {
    // Ratios need only the elements involved, so drop non-positive values.
    const auto normalized = normalize(pattern, standard, canonical_radii(), {},
                                      NonPositivePolicy::DropNonPositive);
    auto ratios = shape_ratios(normalized);
    r.ratios = std::move(ratios.values);
    r.notes.insert(r.notes.end(), ratios.notes.begin(), ratios.notes.end());
  } catch (const Error& e) {
    r.notes.emplace_back(e.what());
  }
  if (prices) {
    const auto value = basket_value(pattern, *prices, config);
    r.basket_value_usd_per_tonne = value.usd_per_tonne;
    for (Element e : value.unpriced) r.notes.push_back(fmt::format("{} unpriced", symbol(e)));
  }
  return r;
}

std::string metrics_csv(const std::vector<MetricReport>& reports) {
  csv::Record header{"sample", "treo_ppm", "ndpr_fraction", "lree_hree_ratio"};
  for (const auto& r : kShapeRatios) header.push_back(r.name);
  header.emplace_back("basket_value_usd_per_t");
  std::string out = csv::join_record(header) + "\n";

  const auto cell = [](const std::optional<double>& v) {
    return v ? csv::format_number(*v) : std::string{};
  };
  for (const auto& m : reports) {
    csv::Record row{m.sample_id, csv::format_number(m.treo_ppm), cell(m.ndpr_fraction),
                    cell(m.lree_hree_ratio)};
    for (const auto& r : kShapeRatios) {
      const auto it = m.ratios.find(r.name);
      row.push_back(it == m.ratios.end() ? "" : csv::format_number(it->second));
    }
    row.push_back(cell(m.basket_value_usd_per_tonne));
    out += csv::join_record(row) + "\n";
  }
  return out;
}

}  // namespace reekit
