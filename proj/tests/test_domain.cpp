#include <doctest.h>

#include <algorithm>
#include <random>

#include "reekit/csv.hpp"
#include "reekit/domain.hpp"
#include "reekit/error.hpp"
#include "reekit/hash.hpp"
#include "support/helpers.hpp"
#include "support/oracle.hpp"

using namespace reekit;

TEST_SUITE("domain") {

TEST_CASE("elements parse case-insensitively and never include Pm") {
  CHECK(parse_element("La") == Element::La);
  CHECK(parse_element("lu") == Element::Lu);
  CHECK(parse_element("YB") == Element::Yb);
  CHECK(parse_element("Y") == Element::Y);
  CHECK_FALSE(parse_element("Pm").has_value());
  CHECK_FALSE(parse_element("pm").has_value());
  CHECK_FALSE(parse_element("Xx").has_value());
  CHECK_FALSE(parse_element("").has_value());
  for (auto e : kAllElements) CHECK(parse_element(symbol(e)) == e);
}

TEST_CASE("element lists") {
  const auto set = parse_element_list("Eu, ce");
  CHECK(set == ElementSet{Element::Ce, Element::Eu});
  CHECK(format_elements(set) == "Ce;Eu");
  CHECK(parse_element_list("Ce;Eu") == set);
  CHECK(format_elements({}) == "");
  CHECK_THROWS_CODE(parse_element_list("Ce,Pm"), ErrorCode::InvalidRequest);
}

TEST_CASE("builtin_reference examples") {
  const auto& ch = builtin_reference("chondrite");
  CHECK(ch.values_ppm().size() == 14);
  for (auto e : kCanonicalElements) CHECK(ch.value(e) > 0.0);
  CHECK_FALSE(ch.citation().empty());

  const auto& morb = builtin_reference("MORB");
  CHECK(morb.value(Element::La) != ch.value(Element::La));
  CHECK(builtin_reference("morb").name() == "MORB");

  const auto& crust = builtin_reference("average-crust");
  for (auto e : kCanonicalElements) CHECK(crust.value(e) > 0.0);

  CHECK_THROWS_CODE(builtin_reference("primitive-mantle"), ErrorCode::UnknownStandard);
  CHECK_THROWS_CODE(builtin_reference(""), ErrorCode::UnknownStandard);
}

TEST_CASE("bundled chondrite file has one row per canonical element") {
  const auto text = testing_support::read_text(std::filesystem::path(REEKIT_DATA_DIR) / "standards" /
                                               "chondrite.csv");
  const auto records = csv::read_records(text);
  REQUIRE(records.size() == 15);  // header + 14
  CHECK(records[0][0] == "element");
}

TEST_CASE("canonical_radii examples") {
  const auto& radii = canonical_radii();
  CHECK(radii.radius(Element::La) > radii.radius(Element::Ce));
  const auto& v = radii.values();
  CHECK(*std::min_element(v.begin(), v.end()) == radii.radius(Element::Lu));
  for (double r : v) {
    CHECK(r >= 90.0);
    CHECK(r <= 130.0);
  }
  // Ordering equals the canonical element ordering.
  for (std::size_t i = 0; i + 1 < kCanonicalCount; ++i) {
    CHECK(radii.radius(kCanonicalElements[i]) > radii.radius(kCanonicalElements[i + 1]));
  }
  // Values are the cited compilation's.
  for (std::size_t i = 0; i < kCanonicalCount; ++i) CHECK(v[i] == oracle::kRadii[i]);
}

TEST_CASE("radii table rejects bad data") {
  auto v = oracle::kRadii;
  std::swap(v[2], v[3]);
  CHECK_THROWS_CODE(RadiiTable(v, "swapped"), ErrorCode::InvalidDataFile);
  auto w = oracle::kRadii;
  w[0] = 140.0;
  CHECK_THROWS_CODE(RadiiTable(w, "band"), ErrorCode::InvalidDataFile);
}

TEST_CASE("radii file accepts angstrom") {
  std::string text = "element,value,unit,citation\n";
  for (std::size_t i = 0; i < kCanonicalCount; ++i) {
    text += std::string(symbol(kCanonicalElements[i])) + "," +
            csv::format_number(oracle::kRadii[i] / 100.0) + ",A,test\n";
  }
  const auto table = parse_radii_csv(text, "angstrom");
  for (std::size_t i = 0; i < kCanonicalCount; ++i) {
    CHECK(table.values()[i] == doctest::Approx(oracle::kRadii[i]).epsilon(1e-12));
  }
}

TEST_CASE("reference file parsing and units") {
  std::string text = "element,value,unit,citation\n";
  for (auto e : kCanonicalElements) text += std::string(symbol(e)) + ",500,ppb,test\n";
  const auto s = parse_reference_csv(text, "custom");
  CHECK(s.value(Element::Gd) == doctest::Approx(0.5));
  CHECK(s.citation() == "test");

  CHECK_THROWS_CODE(parse_reference_csv("element,value,unit,citation\nLa,1,ppm,x\n", "short"),
                    ErrorCode::InvalidDataFile);
  std::string zero = "element,value,unit,citation\n";
  for (auto e : kCanonicalElements) zero += std::string(symbol(e)) + (e == Element::Tb ? ",0" : ",1") + ",ppm,x\n";
  CHECK_THROWS_CODE(parse_reference_csv(zero, "zero"), ErrorCode::InvalidDataFile);
}

TEST_CASE("resolve_reference prefers builtins then files") {
  CHECK(resolve_reference("chondrite").name() == "chondrite");
  const auto path = std::filesystem::path(REEKIT_DATA_DIR) / "standards" / "morb.csv";
  CHECK(resolve_reference(path.string()).value(Element::La) ==
        builtin_reference("MORB").value(Element::La));
  CHECK_THROWS_CODE(resolve_reference("/no/such/file.csv"), ErrorCode::UnknownStandard);
}

TEST_CASE("pattern validation") {
  auto p = testing_support::flat_pattern("a", 2.0);
  CHECK_NOTHROW(validate_pattern(p));
  p.sample_id = "";
  CHECK_THROWS_CODE(validate_pattern(p), ErrorCode::InvalidPattern);
  p = testing_support::flat_pattern("a", 2.0);
  for (auto e : {Element::La, Element::Ce, Element::Pr, Element::Nd, Element::Sm, Element::Eu,
                 Element::Gd, Element::Tb, Element::Dy, Element::Ho}) {
    p.concentrations_ppm.erase(e);
  }
  CHECK(p.canonical_count() == 4);
  CHECK_THROWS_CODE(validate_pattern(p), ErrorCode::TooFewElements);
}

TEST_CASE("make_dataset derives schema and fills UNKNOWN") {
  auto a = testing_support::flat_pattern("a", 1.0);
  a.categories = {{"mineralogy", "apatite"}};
  auto b = testing_support::flat_pattern("b", 2.0);
  b.categories = {{"hole", "H1"}};
  const auto ds = make_dataset({a, b}, "t.csv");
  CHECK(ds.category_schema == std::vector<std::string>{"mineralogy", "hole"});
  CHECK(ds.patterns[0].categories.at("hole") == kUnknownCategory);
  CHECK(ds.patterns[1].categories.at("mineralogy") == kUnknownCategory);
  CHECK(ds.dataset_id.size() == 32);
  CHECK(ds.find("b") != nullptr);
  CHECK(ds.find("c") == nullptr);
  CHECK(ds.category_values("mineralogy") == std::set<std::string>{"apatite", "UNKNOWN"});

  CHECK_THROWS_CODE(make_dataset({a, a}, "dup"), ErrorCode::DuplicateSampleIds);
}

TEST_CASE("dataset id is a content hash") {
  const auto a = testing_support::flat_pattern("a", 1.0);
  const auto b = testing_support::flat_pattern("b", 3.0);
  CHECK(make_dataset({a, b}, "x").dataset_id == make_dataset({a, b}, "x").dataset_id);
  CHECK(make_dataset({a, b}, "x").dataset_id != make_dataset({b, a}, "x").dataset_id);
  const auto ds = make_dataset({a, b}, "x");
  CHECK(ds.dataset_id == content_id(serialize_dataset(ds)));
}

TEST_CASE("sha256 known answer") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(content_id("abc") == "ba7816bf8f01cfea414140de5dae2223");
}

}  // TEST_SUITE

TEST_SUITE("csv") {

TEST_CASE("reader handles quotes, CRLF, BOM and blank lines") {
  std::vector<std::size_t> lines;
  const auto r = csv::read_records("\xEF\xBB\xBF" "a,b\r\n\r\n\"x,1\",\"say \"\"hi\"\"\"\n\"multi\nline\",2\n",
                                   ',', &lines);
  REQUIRE(r.size() == 3);
  CHECK(r[0] == csv::Record{"a", "b"});
  CHECK(r[1] == csv::Record{"x,1", "say \"hi\""});
  CHECK(r[2] == csv::Record{"multi\nline", "2"});
  CHECK(lines == std::vector<std::size_t>{1, 3, 4});
}

TEST_CASE("escape and join round-trip") {
  const csv::Record rec{"plain", "with,comma", "quote\"d", " spaced ", ""};
  const auto back = csv::read_records(csv::join_record(rec) + "\n");
  REQUIRE(back.size() == 1);
  CHECK(back[0] == rec);
  CHECK(csv::escape_field("a;b", ';') == "\"a;b\"");
}

TEST_CASE("numbers format shortest and round-trip") {
  CHECK(csv::format_number(0.1) == "0.1");
  CHECK(csv::format_number(2.0) == "2");
  CHECK(csv::format_number(-0.0) == "0");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    CHECK(csv::parse_number(csv::format_number(x)) == x);
  }
  CHECK(csv::parse_number(" 2.5 ") == 2.5);
  CHECK(csv::parse_number("+3") == 3.0);
  CHECK_FALSE(csv::parse_number("1e999").has_value());
  CHECK_FALSE(csv::parse_number("nan").has_value());
  CHECK_FALSE(csv::parse_number("1.2.3").has_value());
  CHECK_FALSE(csv::parse_number("").has_value());
}

}  // TEST_SUITE
