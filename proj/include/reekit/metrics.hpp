#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reekit/domain.hpp"
#include "reekit/normalization.hpp"

namespace reekit {

// Standard atomic weights (g/mol).
double atomic_mass(Element e) noexcept;
inline constexpr double kOxygenMass = 15.999;

enum class CeriumOxide { Ce2O3, CeO2 };
enum class PraseodymiumOxide { Pr2O3, Pr6O11 };
enum class NdPrBasis { Metal, Oxide };

struct MetricsConfig {
  CeriumOxide cerium = CeriumOxide::Ce2O3;
  PraseodymiumOxide praseodymium = PraseodymiumOxide::Pr2O3;
  NdPrBasis ndpr_basis = NdPrBasis::Metal;
  // First heavy element; LREE is everything canonical before it.
  Element hree_start = Element::Gd;

  std::string describe() const;
};

// "Ce2O3" / "CeO2", "Pr2O3" / "Pr6O11", "metal" / "oxide"; case-insensitive.
std::optional<CeriumOxide> parse_cerium_oxide(std::string_view text) noexcept;
std::optional<PraseodymiumOxide> parse_praseodymium_oxide(std::string_view text) noexcept;
std::optional<NdPrBasis> parse_ndpr_basis(std::string_view text) noexcept;

// Oxide mass per unit metal mass for the configured stoichiometry (> 1).
double oxide_factor(Element e, const MetricsConfig& config = {});

// Sum of canonical concentrations as oxides, ppm.
double treo(const ReePattern& pattern, const MetricsConfig& config = {});

// (Nd + Pr) / sum of canonical REE. Throws ZeroTotal when the sum is zero.
double ndpr(const ReePattern& pattern, const MetricsConfig& config = {});

// Mass ratio of light to heavy canonical REE. Throws ZeroTotal when HREE is zero.
double lree_hree(const ReePattern& pattern, const MetricsConfig& config = {});

struct ShapeRatio {
  std::string name;  // "La/Lu"
  Element numerator;
  Element denominator;
};

inline const std::vector<ShapeRatio> kShapeRatios = {
    {"La/Lu", Element::La, Element::Lu},
    {"La/Gd", Element::La, Element::Gd},
    {"Gd/Lu", Element::Gd, Element::Lu},
};

struct ShapeRatios {
  std::map<std::string, double> values;
  std::vector<std::string> notes;  // ratios omitted for missing elements
};

// Ratios of reference-normalised concentrations, exp(y_a - y_b).
ShapeRatios shape_ratios(const NormalizedPattern& pattern);

using PriceTable = std::map<Element, double>;  // USD per kg of oxide

struct BasketValue {
  double usd_per_tonne = 0.0;
  std::vector<Element> unpriced;  // present but missing from the price table (valued at 0)
};

// sum_e oxide_ppm(e) * 1e-6 * 1000 kg * price(e), in USD per tonne of rock.
BasketValue basket_value(const ReePattern& pattern, const PriceTable& prices,
                         const MetricsConfig& config = {});

// Price file: CSV `element,usd_per_kg_oxide`. Throws InvalidDataFile.
PriceTable parse_price_csv(std::string_view text);

struct MetricReport {
  std::string sample_id;
  double treo_ppm = 0.0;
  std::optional<double> ndpr_fraction;
  std::optional<double> lree_hree_ratio;
  std::map<std::string, double> ratios;
  std::optional<double> basket_value_usd_per_tonne;
  std::vector<std::string> notes;
};

MetricReport metric_report(const ReePattern& pattern, const ReferenceStandard& standard,
                           const MetricsConfig& config = {},
                           const PriceTable* prices = nullptr);

// Columns: sample,treo_ppm,ndpr_fraction,lree_hree_ratio,La/Lu,La/Gd,Gd/Lu,
// basket_value_usd_per_t. Unavailable values are empty cells.
std::string metrics_csv(const std::vector<MetricReport>& reports);

}  // namespace reekit
