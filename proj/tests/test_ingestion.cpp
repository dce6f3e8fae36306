#include <doctest.h>

#include <random>
#include <string>

#include "reekit/csv.hpp"
#include "reekit/ingestion.hpp"
#include "support/helpers.hpp"

using namespace reekit;

namespace {

const std::string kHeader = "sample,La,Ce,Pr,Nd,Sm,Eu,Gd,Tb,Dy,Ho,Er,Tm,Yb,Lu,mineralogy\n";

std::string row(const std::string& id, const std::string& ce = "20", const std::string& cat = "apatite") {
  return id + ",30," + ce + ",4,15,3,1,3,0.5,3,0.6,2,0.3,2,0.3," + cat + "\n";
}

// Data rows in a CSV text, counted independently of the importer.
std::size_t data_rows(const std::string& text) {
  return csv::read_records(text).size() - 1;
}

}  // namespace

TEST_SUITE("ingestion") {

TEST_CASE("three valid rows with one category") {
  const auto r = parse_csv(kHeader + row("a") + row("b") + row("c"));
  CHECK(r.dataset.patterns.size() == 3);
  CHECK(r.dataset.category_schema == std::vector<std::string>{"mineralogy"});
  CHECK(r.report.detected_categories == std::vector<std::string>{"mineralogy"});
  CHECK(r.report.rows_accepted == 3);
  CHECK(r.report.rows_rejected.empty());
  CHECK(r.report.dataset_id == r.dataset.dataset_id);
  CHECK(r.dataset.patterns[1].concentrations_ppm.at(Element::Ce) == 20.0);
}

TEST_CASE("negative Ce is rejected under the default policy") {
  const auto r = parse_csv(kHeader + row("a") + row("b", "-1"));
  CHECK(r.report.rows_accepted == 1);
  REQUIRE(r.report.rows_rejected.size() == 1);
  CHECK(r.report.rows_rejected[0].line == 3);
  CHECK(r.report.rows_rejected[0].code == ErrorCode::NonPositiveConcentration);

  ImportOptions drop;
  drop.nonpositive = NonPositivePolicy::DropNonPositive;
  const auto d = parse_csv(kHeader + row("a") + row("b", "-1"), drop);
  CHECK(d.report.rows_accepted == 2);
  CHECK_FALSE(d.dataset.patterns[1].concentrations_ppm.count(Element::Ce));
}

TEST_CASE("drill-core fixture: 14 elements and every spreadsheet row accepted") {
  const auto text = testing_support::read_text(testing_support::fixture("drill_core_ree.csv"));
  const auto r = parse_csv(text);
  CHECK(r.report.detected_elements.size() == 14);
  CHECK(data_rows(text) == 60);
  CHECK(r.report.rows_accepted == 60);
  CHECK(r.report.rows_rejected.empty());
  CHECK(r.dataset.category_schema == std::vector<std::string>{"hole", "lithology", "mineralogy"});
  // NB018 reports Lu below detection; absent under the default policy.
  CHECK_FALSE(r.dataset.find("NB018")->concentrations_ppm.count(Element::Lu));
  CHECK(r.report.notes.size() == 1);
}

TEST_CASE("rejects fixture reports each bad row with its line") {
  const auto r = parse_csv(testing_support::read_text(testing_support::fixture("rejects.csv")));
  CHECK(r.report.rows_accepted + r.report.rows_rejected.size() == 6);
  CHECK(r.report.rows_accepted == 3);
  REQUIRE(r.report.rows_rejected.size() == 3);
  CHECK(r.report.rows_rejected[0].code == ErrorCode::NonPositiveConcentration);
  CHECK(r.report.rows_rejected[1].code == ErrorCode::InvalidPattern);
  CHECK(r.report.rows_rejected[2].code == ErrorCode::InvalidPattern);
  CHECK(r.dataset.find("R6")->categories.at("rock") == kUnknownCategory);
}

TEST_CASE("header variants and suffixes") {
  const auto r = parse_csv(
      "ID,la_ppm,Ce (ppm),PR [ppm],nd,Sm,Eu_wt%,La_sd\n"
      "x,10,20,3,12,3,0.0001,0.5\n");
  const auto& p = r.dataset.patterns.at(0);
  CHECK(p.sample_id == "x");
  CHECK(p.concentrations_ppm.at(Element::La) == 10.0);
  CHECK(p.concentrations_ppm.at(Element::Pr) == 3.0);
  CHECK(p.concentrations_ppm.at(Element::Eu) == doctest::Approx(1.0));
  CHECK(p.uncertainties_ppm.at(Element::La) == 0.5);
  CHECK(r.report.detected_categories.empty());
}

TEST_CASE("wt% unit option converts to ppm") {
  ImportOptions o;
  o.unit = ConcentrationUnit::WtPercent;
  const auto r = parse_csv("sample,La,Ce,Pr,Nd,Sm\ns,0.1,0.2,0.03,0.1,0.02\n", o);
  CHECK(r.dataset.patterns[0].concentrations_ppm.at(Element::La) == doctest::Approx(1000.0));
  CHECK(r.report.unit_assumption == ConcentrationUnit::WtPercent);
  CHECK(parse_unit("wt%") == ConcentrationUnit::WtPercent);
  CHECK(parse_unit(to_string(ConcentrationUnit::Ppm)) == ConcentrationUnit::Ppm);
}

TEST_CASE("below-detection cells") {
  const std::string text = "sample,La,Ce,Pr,Nd,Sm,Eu\ns,10,20,3,12,3,<0.4\n";
  CHECK_FALSE(parse_csv(text).dataset.patterns[0].concentrations_ppm.count(Element::Eu));
  ImportOptions half;
  half.nonpositive = NonPositivePolicy::ReplaceHalfDetectionLimit;
  CHECK(parse_csv(text, half).dataset.patterns[0].concentrations_ppm.at(Element::Eu) == 0.2);
  CHECK(parse_csv("sample,La,Ce,Pr,Nd,Sm,Eu\ns,10,20,3,12,3,<x\n").report.rows_rejected.size() == 1);
}

TEST_CASE("missing markers and Y") {
  const auto r = parse_csv("sample,La,Ce,Pr,Nd,Sm,Eu,Gd,Y\ns,10,NA,3,12,3,,4,25\n");
  const auto& p = r.dataset.patterns[0];
  CHECK_FALSE(p.concentrations_ppm.count(Element::Ce));
  CHECK_FALSE(p.concentrations_ppm.count(Element::Eu));
  CHECK(p.concentrations_ppm.at(Element::Y) == 25.0);
  CHECK(r.report.detected_elements.back() == "Y");
}

TEST_CASE("whole-file errors") {
  CHECK_THROWS_CODE(parse_csv(""), ErrorCode::NoHeader);
  CHECK_THROWS_CODE(parse_csv("1,2,3\n4,5,6\n"), ErrorCode::NoHeader);
  CHECK_THROWS_CODE(parse_csv("sample,rock\na,b\n"), ErrorCode::NoElementColumns);
  CHECK_THROWS_CODE(parse_csv("sample,La,la_ppm\na,1,2\n"), ErrorCode::AmbiguousElementColumn);
  CHECK_THROWS_CODE(parse_csv(kHeader + row("a") + row("a")), ErrorCode::DuplicateSampleIds);
  CHECK_THROWS_CODE(parse_csv(kHeader + "\xff\xfe" + row("a")), ErrorCode::InvalidDataFile);
}

TEST_CASE("rows are numbered when there is no sample column") {
  const auto r = parse_csv("La,Ce,Pr,Nd,Sm\n1,2,3,4,5\n1,2,3,4,6\n");
  CHECK(r.dataset.patterns[1].sample_id == "2");
  CHECK(r.report.notes.size() == 1);
}

TEST_CASE("tab delimiter and category values kept verbatim") {
  ImportOptions o;
  o.delimiter = '\t';
  const auto r = parse_csv("sample\tLa\tCe\tPr\tNd\tSm\trock\ns\t1\t2\t3\t4\t5\t  Red  granite \n", o);
  CHECK(r.dataset.patterns[0].categories.at("rock") == "Red  granite");
}

TEST_CASE("property: serialisation round-trips to an equal dataset") {
  const auto text = testing_support::read_text(testing_support::fixture("drill_core_ree.csv"));
  ImportOptions o;
  o.source_name = "drill";
  const auto first = parse_csv(text, o).dataset;
  const auto again = parse_csv(serialize_dataset(first), o).dataset;
  CHECK(again == first);
  CHECK(serialize_dataset(again) == serialize_dataset(first));
}

TEST_CASE("property: determinism") {
  const auto text = testing_support::read_text(testing_support::fixture("drill_core_ree.csv"));
  const auto a = parse_csv(text);
  const auto b = parse_csv(text);
  CHECK(a.dataset == b.dataset);
  CHECK(a.report.notes == b.report.notes);
}

TEST_CASE("property: parse_csv is total over random bytes") {
  std::mt19937_64 rng(99);
  const std::string alphabet = "sampleLaCeNdPrSmEuGdLu,;\t\n\r\"<-.0123456789 NA\xc3\xa9\xff";
  const std::string seed = kHeader + row("a") + row("b", "<1") + row("c", "-3");
  std::size_t named_errors = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::string bytes;
    if (trial % 2 == 0) {
      bytes = seed;
      const int edits = 1 + static_cast<int>(rng() % 8);
      for (int k = 0; k < edits; ++k) {
        bytes[rng() % bytes.size()] = alphabet[rng() % alphabet.size()];
      }
    } else {
      const std::size_t n = rng() % 200;
      for (std::size_t k = 0; k < n; ++k) bytes += alphabet[rng() % alphabet.size()];
    }
    try {
      const auto r = parse_csv(bytes);
      CHECK(r.report.rows_accepted == r.dataset.patterns.size());
    } catch (const Error&) {
      ++named_errors;
    } catch (const std::exception& e) {
      FAIL("unnamed exception: " << e.what());
    }
  }
  CHECK(named_errors > 0);
}

TEST_CASE("property: accepted + rejected equals data rows") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> ce_values{"20", "-1", "0", "abc", "", "<2", "NA", "7.5"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text = kHeader;
    const std::size_t n = 1 + rng() % 20;
    for (std::size_t i = 0; i < n; ++i) text += row("s" + std::to_string(i), ce_values[rng() % ce_values.size()]);
    const auto r = parse_csv(text);
    CHECK(r.report.rows_accepted + r.report.rows_rejected.size() == n);
  }
}

}  // TEST_SUITE
