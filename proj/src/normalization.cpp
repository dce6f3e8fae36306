#include "reekit/normalization.hpp"

#include <fmt/format.h>

#include <cmath>

#include "reekit/error.hpp"

namespace reekit {

std::string_view to_string(NonPositivePolicy policy) noexcept {
  switch (policy) {
    case NonPositivePolicy::Reject: return "reject";
    case NonPositivePolicy::DropNonPositive: return "drop-nonpositive";
    case NonPositivePolicy::ReplaceHalfDetectionLimit: return "replace-half-detection-limit";
  }
  return "reject";
}

std::optional<NonPositivePolicy> parse_nonpositive_policy(std::string_view text) noexcept {
  if (text == "reject") return NonPositivePolicy::Reject;
  if (text == "drop-nonpositive" || text == "drop") return NonPositivePolicy::DropNonPositive;
  if (text == "replace-half-detection-limit" || text == "half-dl") {
    return NonPositivePolicy::ReplaceHalfDetectionLimit;
  }
  return std::nullopt;
}

std::optional<double> NormalizedPattern::y(Element e) const noexcept {
  for (const auto& p : points) {
    if (p.element == e) return p.y;
  }
  return std::nullopt;
}

NormalizedPattern normalize(const ReePattern& pattern, const ReferenceStandard& standard,
                            const RadiiTable& radii, const ElementSet& exclusions,
                            NonPositivePolicy policy) {
  NormalizedPattern out;
  out.sample_id = pattern.sample_id;
  out.reference_name = standard.name();
  for (Element e : kCanonicalElements) {
    const auto c = pattern.concentration(e);
    if (!c || exclusions.count(e)) {
      out.mask.insert(e);
      continue;
    }
    if (!(*c > 0.0) || !std::isfinite(*c)) {
      if (policy == NonPositivePolicy::Reject) {
        throw Error(ErrorCode::NonPositiveConcentration,
                    fmt::format("sample '{}': {} concentration {} is not positive",
                                pattern.sample_id, symbol(e), *c),
                    {std::string(symbol(e))});
      }
      out.mask.insert(e);
      continue;
    }
    out.points.push_back({e, radii.radius(e), std::log(*c / standard.value(e))});
  }
  if (out.points.size() < kMinimumElements) {
    throw Error(ErrorCode::TooFewElements,
                fmt::format("sample '{}' has {} usable elements, need at least {}",
                            pattern.sample_id, out.points.size(), kMinimumElements));
  }
  return out;
}

std::map<Element, double> denormalize(const std::map<Element, double>& y_values,
                                      const ReferenceStandard& standard) {
  std::map<Element, double> out;
  for (const auto& [e, y] : y_values) out.emplace(e, standard.value(e) * std::exp(y));
  return out;
}

}  // namespace reekit
