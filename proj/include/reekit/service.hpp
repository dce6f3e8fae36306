#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "reekit/lambda.hpp"
#include "reekit/store.hpp"

namespace reekit::service {

inline constexpr std::size_t kMaxBodyBytes = 64u * 1024u * 1024u;

struct Request {
  std::string method;  // GET / POST
  std::string path;    // decoded, with or without the /v1 prefix
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// HTTP semantics without sockets. Routes (all also served under /v1):
//
//   GET  /datasets                                  summaries
//   POST /datasets?name=&delimiter=&unit=&nonpositive=   CSV body -> {dataset_id, import_report}
//   GET  /datasets/{id}/lambdas?standard=&degree=&exclude=&weights=&nonpositive=&format=json|csv
//   GET  /datasets/{id}/metrics?standard=&ce_oxide=&pr_oxide=&ndpr_basis=
//   GET  /datasets/{id}/viz/{kind}?x=&y=&z=&indices=&color_by=&group_by=&marginal=  (+ fit params)
//   GET  /datasets/{id}/sample/{sample_id}          pattern, lambdas, metrics, anomalies
//   POST /sandbox/forward   {"lambdas": [...], "standard": "chondrite"}
//   POST /sandbox/inverse   {"pattern": {"La": ...}, "standard": "chondrite", "degree": 4}
//   GET  /standards
//
// Errors are {"code", "message", "detail"?} with codes from ErrorCode;
// NotFound -> 404, PayloadTooLarge -> 413, Internal -> 500, others -> 400.
class Service {
 public:
  explicit Service(DatasetStore& store) : store_(store) {}

  Response handle(const Request& request);

 private:
  Response list_datasets() const;
  Response post_dataset(const Request& request);
  Response lambdas(const std::string& id, const Request& request);
  Response metrics(const std::string& id, const Request& request);
  Response viz(const std::string& id, const std::string& kind, const Request& request);
  Response sample(const std::string& id, const std::string& sample_id, const Request& request);
  Response sandbox_forward(const Request& request) const;
  Response sandbox_inverse(const Request& request) const;
  Response standards() const;

  std::shared_ptr<const DatasetFit> fit_for(const std::string& id, const Dataset& dataset,
                                            const FitConfig& config);

  DatasetStore& store_;
  std::mutex fit_mutex_;
  std::map<std::string, std::shared_ptr<const DatasetFit>> fits_;
};

// Fit configuration from query parameters (standard, degree, exclude, weights,
// nonpositive). Throws Error on bad values.
FitConfig fit_config_from_query(const std::map<std::string, std::string>& query);

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
};

// cpp-httplib front end for a Service.
class HttpServer {
 public:
  HttpServer(Service& service, ServerOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and serves on a background thread; returns the bound port.
  int start();
  // Binds and serves on the calling thread until stop().
  bool run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace reekit::service
