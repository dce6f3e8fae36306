#include <doctest.h>

#include <nlohmann/json.hpp>

#include <set>
#include <thread>

#include "reekit/service.hpp"
#include "support/helpers.hpp"

// After Eigen: <resolv.h> defines a `_res` macro.
#include <httplib.h>

using namespace reekit;
using namespace reekit::service;
using nlohmann::json;

namespace {

std::set<std::string> error_names() {
  std::set<std::string> names;
  for (int c = 0; c <= static_cast<int>(ErrorCode::Internal); ++c) {
    names.emplace(to_string(static_cast<ErrorCode>(c)));
  }
  return names;
}

struct Fixture {
  DatasetStore store;
  Service svc{store};
  std::string id;

  Fixture() {
    const auto r = svc.handle({"POST", "/v1/datasets", {{"name", "drill"}},
                               testing_support::read_text(testing_support::fixture("drill_core_ree.csv"))});
    REQUIRE(r.status == 201);
    id = json::parse(r.body).at("dataset_id").get<std::string>();
  }

  Response get(const std::string& path, std::map<std::string, std::string> query = {}) {
    return svc.handle({"GET", path, std::move(query), ""});
  }
  Response post(const std::string& path, const json& body) {
    return svc.handle({"POST", path, {}, body.dump()});
  }
};

std::string error_code(const Response& r) { return json::parse(r.body).at("code").get<std::string>(); }

}  // namespace

TEST_SUITE("service") {

TEST_CASE("upload, re-upload and list") {
  Fixture f;
  const auto again = f.svc.handle({"POST", "/datasets", {}, testing_support::read_text(
                                                                testing_support::fixture("drill_core_ree.csv"))});
  CHECK(again.status == 201);
  const auto body = json::parse(again.body);
  CHECK(body.at("dataset_id") == f.id);
  CHECK(body.at("import_report").at("rows_accepted") == 60);
  const auto list = json::parse(f.get("/v1/datasets").body).at("datasets");
  REQUIRE(list.size() == 1);
  CHECK(list[0].at("rows") == 60);
}

TEST_CASE("upload errors") {
  Fixture f;
  const auto headerless = f.svc.handle({"POST", "/v1/datasets", {}, "1,2,3\n4,5,6\n"});
  CHECK(headerless.status == 400);
  CHECK(error_code(headerless) == "NoHeader");
  const auto bad_delim = f.svc.handle({"POST", "/v1/datasets", {{"delimiter", "ab"}}, "La\n1\n"});
  CHECK(bad_delim.status == 400);
  Request big{"POST", "/v1/datasets", {}, std::string(kMaxBodyBytes + 1, 'x')};
  const auto too_large = f.svc.handle(big);
  CHECK(too_large.status == 413);
  CHECK(error_code(too_large) == "PayloadTooLarge");
}

TEST_CASE("lambdas endpoint") {
  Fixture f;
  const auto r = f.get("/v1/datasets/" + f.id + "/lambdas");
  CHECK(r.status == 200);
  const auto body = json::parse(r.body);
  CHECK(body.at("rows").size() == 60);
  CHECK(body.at("metadata").at("degree_count") == 4);
  CHECK(f.get("/v1/datasets/" + f.id + "/lambdas").body == r.body);

  const auto csv = f.get("/v1/datasets/" + f.id + "/lambdas", {{"format", "csv"}, {"degree", "3"}});
  CHECK(csv.content_type.rfind("text/csv", 0) == 0);
  CHECK(csv.body.rfind("sample,lambda0,lambda1,lambda2,rms_misfit", 0) == 0);

  const auto d7 = f.get("/v1/datasets/" + f.id + "/lambdas", {{"degree", "7"}});
  CHECK(d7.status == 400);
  CHECK(error_code(d7) == "DegreeOutOfRange");
  const auto missing = f.get("/v1/datasets/ffffffffffffffffffffffffffffffff/lambdas");
  CHECK(missing.status == 404);
  CHECK(error_code(missing) == "NotFound");

  const auto excluded = json::parse(f.get("/v1/datasets/" + f.id + "/lambdas",
                                          {{"exclude", "Ce,Eu"}, {"standard", "MORB"}}).body);
  CHECK(excluded.at("metadata").at("exclusions") == json::array({"Ce", "Eu"}));
  CHECK(excluded.at("metadata").at("standard") == "MORB");
}

TEST_CASE("viz endpoint") {
  Fixture f;
  const auto base = "/v1/datasets/" + f.id + "/viz/";
  const auto spider = json::parse(f.get(base + "spider").body);
  CHECK(spider.at("kind") == "spider");
  CHECK(spider.at("series").at("lines").size() == 60);

  const auto rug = f.get(base + "density_contour", {{"marginal", "rug"}});
  REQUIRE(rug.status == 200);
  const auto grid = json::parse(rug.body).at("series").at("grids").at(0);
  CHECK(grid.at("marginal").at("rug").at("x").size() == 60);

  const auto violin = json::parse(f.get(base + "violin", {{"group_by", "mineralogy"}}).body);
  CHECK(violin.at("series").at("groups").size() == 3);

  const auto bad_cat = f.get(base + "scatter2d", {{"color_by", "colour"}});
  CHECK(bad_cat.status == 400);
  CHECK(error_code(bad_cat) == "UnknownCategory");
  CHECK(error_code(f.get(base + "scatter2d", {{"y", "9"}})) == "IndexOutOfRange");
  CHECK(error_code(f.get(base + "heatmap")) == "UnsupportedKind");
}

TEST_CASE("sandbox forward and inverse") {
  Fixture f;
  const auto& ch = builtin_reference("chondrite");
  const auto zero = json::parse(f.post("/v1/sandbox/forward", {{"lambdas", {0, 0, 0, 0}}, {"standard", "chondrite"}}).body);
  for (auto e : kCanonicalElements) {
    CHECK(zero.at("pattern").at(std::string(symbol(e))).get<double>() == doctest::Approx(ch.value(e)).epsilon(1e-14));
  }

  const json lambdas = {4.1, -0.3, 0.02, -0.001};
  const auto fwd = json::parse(f.post("/v1/sandbox/forward", {{"lambdas", lambdas}, {"standard", "chondrite"}}).body);
  const auto inv = f.post("/v1/sandbox/inverse", {{"pattern", fwd.at("pattern")}, {"standard", "chondrite"}, {"degree", 4}});
  REQUIRE(inv.status == 200);
  const auto back = json::parse(inv.body).at("lambdas");
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(std::fabs(back[j].get<double>() - lambdas[j].get<double>()) <= 1e-9);
  }

  const auto three = f.post("/v1/sandbox/inverse",
                            {{"pattern", {{"La", 10}, {"Ce", 20}, {"Nd", 8}}}, {"standard", "chondrite"}});
  CHECK(three.status == 400);
  CHECK(error_code(three) == "TooFewPoints");
  CHECK(error_code(f.post("/v1/sandbox/forward", {{"lambdas", {1}}, {"standard", "nope"}})) == "UnknownStandard");
  CHECK(f.svc.handle({"POST", "/v1/sandbox/forward", {}, "{not json"}).status == 400);
}

TEST_CASE("sample bundle agrees with the lambdas endpoint") {
  Fixture f;
  const auto bundle_r = f.get("/v1/datasets/" + f.id + "/sample/NB007");
  REQUIRE(bundle_r.status == 200);
  const auto bundle = json::parse(bundle_r.body);
  for (const auto* key : {"pattern", "lambdas", "metrics", "anomalies"}) CHECK(bundle.contains(key));
  const auto rows = json::parse(f.get("/v1/datasets/" + f.id + "/lambdas").body).at("rows");
  bool found = false;
  for (const auto& row : rows) {
    if (row.at("sample") != "NB007") continue;
    found = true;
    CHECK(row.at("lambdas") == bundle.at("lambdas").at("lambdas"));
  }
  CHECK(found);
  CHECK(f.get("/v1/datasets/" + f.id + "/sample/NOPE").status == 404);
}

TEST_CASE("metrics and standards") {
  Fixture f;
  const auto m = f.get("/v1/datasets/" + f.id + "/metrics", {{"ce_oxide", "CeO2"}});
  REQUIRE(m.status == 200);
  CHECK(json::parse(m.body).at("rows").size() == 60);
  const auto s = json::parse(f.get("/v1/standards").body).at("standards");
  CHECK(s.size() == 3);
}

TEST_CASE("every error body carries a closed-set code") {
  Fixture f;
  const auto names = error_names();
  const std::vector<Response> errors{
      f.get("/nowhere"),
      f.get("/v1/datasets/" + f.id + "/lambdas", {{"degree", "x"}}),
      f.get("/v1/datasets/" + f.id + "/lambdas", {{"weights", "magic"}}),
      f.get("/v1/datasets/" + f.id + "/viz/violin", {{"y", "-1"}}),
      f.post("/v1/sandbox/inverse", json::array()),
      f.svc.handle({"DELETE", "/v1/datasets", {}, ""}),
  };
  for (const auto& r : errors) {
    CHECK(r.status >= 400);
    const auto body = json::parse(r.body);
    CHECK(names.count(body.at("code").get<std::string>()) == 1);
    CHECK(body.at("message").get<std::string>().find("what()") == std::string::npos);
  }
}

TEST_CASE("concurrent identical requests return identical bytes") {
  Fixture f;
  const auto path = "/v1/datasets/" + f.id + "/viz/density_contour";
  std::vector<std::string> bodies(4);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < bodies.size(); ++t) {
    threads.emplace_back([&, t] { bodies[t] = f.get(path, {{"color_by", "mineralogy"}}).body; });
  }
  for (auto& th : threads) th.join();
  for (const auto& b : bodies) CHECK(b == bodies[0]);
}

TEST_CASE("http loopback") {
  DatasetStore store;
  Service svc(store);
  HttpServer server(svc, {"127.0.0.1", 0});
  const int port = server.start();
  REQUIRE(port > 0);
  httplib::Client client("127.0.0.1", port);
  client.set_read_timeout(30, 0);
  client.set_write_timeout(30, 0);

  const auto up = client.Post("/v1/datasets?name=drill",
                              testing_support::read_text(testing_support::fixture("drill_core_ree.csv")), "text/csv");
  REQUIRE(up);
  CHECK(up->status == 201);
  const auto id = json::parse(up->body).at("dataset_id").get<std::string>();

  const auto lam = client.Get("/v1/datasets/" + id + "/lambdas?format=csv");
  REQUIRE(lam);
  CHECK(lam->status == 200);
  CHECK(lam->get_header_value("Content-Type").rfind("text/csv", 0) == 0);

  const auto nf = client.Get("/v1/datasets/" + id + "/sample/NOPE");
  REQUIRE(nf);
  CHECK(nf->status == 404);
  CHECK(json::parse(nf->body).at("code") == "NotFound");

  const auto big = client.Post("/v1/datasets", std::string(65 * 1024 * 1024, 'a'), "text/csv");
  REQUIRE(big);
  CHECK(big->status == 413);
  CHECK(json::parse(big->body).at("code") == "PayloadTooLarge");
  server.stop();
}

}  // TEST_SUITE
