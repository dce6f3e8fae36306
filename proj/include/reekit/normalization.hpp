#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reekit/domain.hpp"

namespace reekit {

// What to do with a concentration <= 0 (or a below-detection entry).
enum class NonPositivePolicy { Reject, DropNonPositive, ReplaceHalfDetectionLimit };

std::string_view to_string(NonPositivePolicy policy) noexcept;
// Accepts "reject", "drop-nonpositive", "replace-half-detection-limit".
std::optional<NonPositivePolicy> parse_nonpositive_policy(std::string_view text) noexcept;

// Fit space is the natural log of sample / reference.
inline constexpr std::string_view kLogBase = "e";

struct NormalizedPoint {
  Element element;
  double radius_pm;
  double y;
};

struct NormalizedPattern {
  std::string sample_id;
  std::vector<NormalizedPoint> points;  // decreasing radius
  ElementSet mask;                      // canonical elements not in `points`
  std::string reference_name;

  std::optional<double> y(Element e) const noexcept;
};

// y = ln(c / reference) for each present canonical element not in `exclusions`.
// A non-positive value raises NonPositiveConcentration under Reject and is
// masked otherwise (no detection limit is known at this point, so
// ReplaceHalfDetectionLimit masks as well). Fewer than five usable points
// raises TooFewElements.
NormalizedPattern normalize(const ReePattern& pattern, const ReferenceStandard& standard,
                            const RadiiTable& radii, const ElementSet& exclusions = {},
                            NonPositivePolicy policy = NonPositivePolicy::Reject);

// c = reference * exp(y).
std::map<Element, double> denormalize(const std::map<Element, double>& y_values,
                                      const ReferenceStandard& standard);

}  // namespace reekit
