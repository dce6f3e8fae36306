#include <doctest.h>

#include <cmath>
#include <random>

#include "reekit/normalization.hpp"
#include "support/helpers.hpp"

using namespace reekit;
using testing_support::flat_pattern;

TEST_SUITE("normalization") {

TEST_CASE("pattern equal to the reference normalises to zero") {
  const auto& ch = builtin_reference("chondrite");
  const auto np = normalize(flat_pattern("s", 1.0), ch, canonical_radii());
  REQUIRE(np.points.size() == 14);
  for (const auto& pt : np.points) CHECK(pt.y == 0.0);
  CHECK(np.mask.empty());
  CHECK(np.reference_name == "chondrite");
}

TEST_CASE("ten times the reference gives ln 10") {
  const auto& ch = builtin_reference("chondrite");
  auto p = flat_pattern("s", 1.0);
  p.concentrations_ppm[Element::La] = 10.0 * ch.value(Element::La);
  const auto np = normalize(p, ch, canonical_radii());
  CHECK(np.y(Element::La).value() == doctest::Approx(2.302585).epsilon(1e-6));
}

TEST_CASE("points follow decreasing radius and carry radii") {
  const auto np = normalize(flat_pattern("s", 3.0), builtin_reference("chondrite"), canonical_radii());
  for (std::size_t i = 0; i + 1 < np.points.size(); ++i) {
    CHECK(np.points[i].radius_pm > np.points[i + 1].radius_pm);
  }
  CHECK(np.points.front().element == Element::La);
  CHECK(np.points.front().radius_pm == canonical_radii().radius(Element::La));
}

TEST_CASE("excluding Ce masks it and leaves other values unchanged") {
  const auto& ch = builtin_reference("chondrite");
  const auto p = testing_support::pattern_from_lambdas(
      "nolans", (Eigen::VectorXd(4) << 6.2, 0.21, -0.002, 0.0001).finished());
  const auto full = normalize(p, ch, canonical_radii());
  const auto masked = normalize(p, ch, canonical_radii(), {Element::Ce});
  CHECK(masked.mask == ElementSet{Element::Ce});
  CHECK_FALSE(masked.y(Element::Ce).has_value());
  CHECK(masked.points.size() == 13);
  for (const auto& pt : masked.points) CHECK(pt.y == full.y(pt.element).value());
}

TEST_CASE("absent elements are masked; Y and Sc never enter") {
  auto p = flat_pattern("s", 2.0);
  p.concentrations_ppm.erase(Element::Tm);
  p.concentrations_ppm[Element::Y] = 20.0;
  const auto np = normalize(p, builtin_reference("chondrite"), canonical_radii());
  CHECK(np.mask == ElementSet{Element::Tm});
  CHECK(np.points.size() == 13);
}

TEST_CASE("non-positive policies") {
  const auto& ch = builtin_reference("chondrite");
  auto p = flat_pattern("s", 2.0);
  p.concentrations_ppm[Element::Ce] = 0.0;
  try {
    (void)normalize(p, ch, canonical_radii());
    FAIL("expected NonPositiveConcentration");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveConcentration);
    REQUIRE(e.detail().size() == 1);
    CHECK(e.detail()[0] == "Ce");
  }
  const auto dropped = normalize(p, ch, canonical_radii(), {}, NonPositivePolicy::DropNonPositive);
  CHECK(dropped.mask == ElementSet{Element::Ce});
  const auto half = normalize(p, ch, canonical_radii(), {}, NonPositivePolicy::ReplaceHalfDetectionLimit);
  CHECK(half.mask == ElementSet{Element::Ce});
}

TEST_CASE("too few usable points") {
  auto p = flat_pattern("s", 2.0);
  const ElementSet many{Element::La, Element::Ce, Element::Pr, Element::Nd, Element::Sm,
                        Element::Eu, Element::Gd, Element::Tb, Element::Dy, Element::Ho};
  CHECK_THROWS_CODE(normalize(p, builtin_reference("chondrite"), canonical_radii(), many),
                    ErrorCode::TooFewElements);
}

TEST_CASE("policy names") {
  for (auto p : {NonPositivePolicy::Reject, NonPositivePolicy::DropNonPositive,
                 NonPositivePolicy::ReplaceHalfDetectionLimit}) {
    CHECK(parse_nonpositive_policy(to_string(p)) == p);
  }
  CHECK_FALSE(parse_nonpositive_policy("ignore").has_value());
}

TEST_CASE("denormalize examples") {
  const auto& ch = builtin_reference("chondrite");
  const auto c = denormalize({{Element::La, 0.0}, {Element::Lu, 2.302585}}, ch);
  CHECK(c.at(Element::La) == ch.value(Element::La));
  CHECK(c.at(Element::Lu) / ch.value(Element::Lu) == doctest::Approx(10.0).epsilon(1e-6));
  const auto exact = denormalize({{Element::Gd, std::log(10.0)}}, ch);
  CHECK(std::fabs(exact.at(Element::Gd) / ch.value(Element::Gd) - 10.0) <= 1e-9);
}

TEST_CASE("property: normalize and denormalize are inverse within 1e-12") {
  const auto& ch = builtin_reference("chondrite");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-8.0, 12.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::map<Element, double> y;
    for (auto e : kCanonicalElements) y[e] = u(rng);
    ReePattern p;
    p.sample_id = "r";
    p.concentrations_ppm = denormalize(y, ch);
    const auto np = normalize(p, ch, canonical_radii());
    for (const auto& pt : np.points) {
      CHECK(std::fabs(pt.y - y.at(pt.element)) <= 1e-12 * std::max(1.0, std::fabs(y.at(pt.element))));
    }
    std::map<Element, double> back_y;
    for (const auto& pt : np.points) back_y[pt.element] = pt.y;
    const auto c = denormalize(back_y, ch);
    for (auto e : kCanonicalElements) {
      CHECK(std::fabs(c.at(e) / p.concentrations_ppm.at(e) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("property: changing the standard shifts y by ln(ch_B / ch_A)") {
  const auto& a = builtin_reference("chondrite");
  const auto& b = builtin_reference("MORB");
  std::mt19937_64 rng(12);
  std::lognormal_distribution<double> conc(2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    ReePattern p;
    p.sample_id = "r";
    for (auto e : kCanonicalElements) p.concentrations_ppm[e] = conc(rng);
    const auto ya = normalize(p, a, canonical_radii());
    const auto yb = normalize(p, b, canonical_radii());
    for (auto e : kCanonicalElements) {
      const double shift = std::log(b.value(e) / a.value(e));
      CHECK(*ya.y(e) - *yb.y(e) == doctest::Approx(shift).epsilon(1e-12));
    }
  }
}

}  // TEST_SUITE
