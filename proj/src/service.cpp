#include "reekit/service.hpp"

#include <fmt/format.h>

#include <charconv>
#include <exception>
#include <utility>

#include "httplib.h"
#include "reekit/csv.hpp"
#include "reekit/json_io.hpp"
#include "reekit/metrics.hpp"
#include "reekit/viz.hpp"

namespace reekit::service {

namespace {

using json_io::json;

Response json_response(int status, const json& body) {
  return {status, "application/json", body.dump()};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::PayloadTooLarge: return 413;
    case ErrorCode::Internal: return 500;
    default: return 400;
  }
}

Response error_response(const Error& e) {
  return json_response(status_for(e.code()), json_io::error_body(e.code(), e.what(), e.detail()));
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    const auto j = path.find('/', i);
    const auto end = j == std::string_view::npos ? path.size() : j;
    if (end > i) parts.emplace_back(path.substr(i, end - i));
    i = end + 1;
  }
  return parts;
}

const std::string* find(const std::map<std::string, std::string>& query, const std::string& key) {
  const auto it = query.find(key);
  if (it == query.end() || it->second.empty()) return nullptr;
  return &it->second;
}

int parse_int(const std::string& text, const std::string& name) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::InvalidRequest, fmt::format("{} must be an integer, got '{}'", name, text));
  }
  return value;
}

int int_param(const std::map<std::string, std::string>& query, const std::string& key,
              int fallback) {
  const auto* v = find(query, key);
  return v ? parse_int(*v, key) : fallback;
}

std::string string_param(const std::map<std::string, std::string>& query, const std::string& key) {
  const auto* v = find(query, key);
  return v ? *v : std::string();
}

std::vector<int> index_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& field : csv::read_records(text, ',').front()) {
    out.push_back(parse_int(std::string(csv::trim(field)), "indices"));
  }
  return out;
}

void check_degree(int degree_count) {
  if (degree_count < kMinDegreeCount || degree_count > kMaxDegreeCount) {
    throw Error(ErrorCode::DegreeOutOfRange,
                fmt::format("degree_count must be in {}..{}, got {}", kMinDegreeCount,
                            kMaxDegreeCount, degree_count));
  }
}

json parse_body(const std::string& body) {
  json parsed = json::parse(body, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    throw Error(ErrorCode::InvalidRequest, "request body must be a JSON object");
  }
  return parsed;
}

ReferenceStandard body_standard(const json& body) {
  if (!body.contains("standard")) return builtin_reference("chondrite");
  if (!body["standard"].is_string()) {
    throw Error(ErrorCode::InvalidRequest, "standard must be a string");
  }
  return builtin_reference(body["standard"].get<std::string>());
}

MetricsConfig metrics_config_from_query(const std::map<std::string, std::string>& query) {
  MetricsConfig config;
  if (const auto* v = find(query, "ce_oxide")) {
    const auto p = parse_cerium_oxide(*v);
    if (!p) throw Error(ErrorCode::InvalidRequest, fmt::format("unknown ce_oxide '{}'", *v));
    config.cerium = *p;
  }
  if (const auto* v = find(query, "pr_oxide")) {
    const auto p = parse_praseodymium_oxide(*v);
    if (!p) throw Error(ErrorCode::InvalidRequest, fmt::format("unknown pr_oxide '{}'", *v));
    config.praseodymium = *p;
  }
  if (const auto* v = find(query, "ndpr_basis")) {
    const auto p = parse_ndpr_basis(*v);
    if (!p) throw Error(ErrorCode::InvalidRequest, fmt::format("unknown ndpr_basis '{}'", *v));
    config.ndpr_basis = *p;
  }
  return config;
}

}  // namespace

FitConfig fit_config_from_query(const std::map<std::string, std::string>& query) {
  FitConfig config;
  // Only built-in standards over HTTP; file paths are a CLI feature.
  if (const auto* v = find(query, "standard")) config.standard = builtin_reference(*v);
  config.degree_count = int_param(query, "degree", kDefaultDegreeCount);
  check_degree(config.degree_count);
  if (const auto* v = find(query, "exclude")) config.exclusions = parse_element_list(*v);
  if (const auto* v = find(query, "weights")) {
    const auto w = parse_weights_policy(*v);
    if (!w) throw Error(ErrorCode::InvalidRequest, fmt::format("unknown weights policy '{}'", *v));
    config.weights = *w;
  }
  if (const auto* v = find(query, "nonpositive")) {
    const auto p = parse_nonpositive_policy(*v);
    if (!p) {
      throw Error(ErrorCode::InvalidRequest, fmt::format("unknown nonpositive policy '{}'", *v));
    }
    config.nonpositive = *p;
  }
  return config;
}

Response Service::handle(const Request& request) {
  try {
    if (request.body.size() > kMaxBodyBytes) {
      throw Error(ErrorCode::PayloadTooLarge,
                  fmt::format("request body exceeds {} bytes", kMaxBodyBytes));
    }
    auto parts = split_path(request.path);
    if (!parts.empty() && parts.front() == "v1") parts.erase(parts.begin());
    const bool get = request.method == "GET";
    const bool post = request.method == "POST";
    const auto n = parts.size();

    if (n == 1 && parts[0] == "datasets") {
      if (get) return list_datasets();
      if (post) return post_dataset(request);
    } else if (n == 1 && parts[0] == "standards" && get) {
      return standards();
    } else if (n == 2 && parts[0] == "sandbox" && post) {
      if (parts[1] == "forward") return sandbox_forward(request);
      if (parts[1] == "inverse") return sandbox_inverse(request);
    } else if (n >= 3 && parts[0] == "datasets" && get) {
      const auto& id = parts[1];
      if (n == 3 && parts[2] == "lambdas") return lambdas(id, request);
      if (n == 3 && parts[2] == "metrics") return metrics(id, request);
      if (n == 4 && parts[2] == "viz") return viz(id, parts[3], request);
      if (n == 4 && parts[2] == "sample") return sample(id, parts[3], request);
    }
    throw Error(ErrorCode::NotFound,
                fmt::format("no route for {} {}", request.method, request.path));
  } catch (const Error& e) {
    return error_response(e);
  } catch (const std::exception&) {
    return error_response(Error(ErrorCode::Internal, "internal error"));
  }
}

Response Service::list_datasets() const {
  json out = json::array();
  for (const auto& s : store_.list()) out.push_back(json_io::to_json(s));
  return json_response(200, {{"datasets", std::move(out)}});
}

Response Service::post_dataset(const Request& request) {
  ImportOptions options;
  options.source_name = string_param(request.query, "name");
  if (options.source_name.empty()) options.source_name = "upload";
  if (const auto* v = find(request.query, "delimiter")) {
    if (*v == "tab" || *v == "\\t") {
      options.delimiter = '\t';
    } else if (v->size() == 1) {
      options.delimiter = v->front();
    } else {
      throw Error(ErrorCode::InvalidRequest, fmt::format("delimiter must be one character"));
    }
  }
  if (const auto* v = find(request.query, "unit")) {
    const auto u = parse_unit(*v);
    if (!u) throw Error(ErrorCode::InvalidRequest, fmt::format("unknown unit '{}'", *v));
    options.unit = *u;
  }
  if (const auto* v = find(request.query, "nonpositive")) {
    const auto p = parse_nonpositive_policy(*v);
    if (!p) {
      throw Error(ErrorCode::InvalidRequest, fmt::format("unknown nonpositive policy '{}'", *v));
    }
    options.nonpositive = *p;
  }
  const auto result = parse_csv(request.body, options);
  const auto id = store_.put(result.dataset, request.body, &options);
  return json_response(201, {{"dataset_id", id}, {"import_report", json_io::to_json(result.report)}});
}

std::shared_ptr<const DatasetFit> Service::fit_for(const std::string& id, const Dataset& dataset,
                                                   const FitConfig& config) {
  const auto key = id + "|" + config.cache_key();
  {
    std::lock_guard lock(fit_mutex_);
    if (const auto it = fits_.find(key); it != fits_.end()) return it->second;
  }
  auto fit = std::make_shared<const DatasetFit>(fit_dataset(dataset, config));
  std::lock_guard lock(fit_mutex_);
  return fits_.try_emplace(key, std::move(fit)).first->second;
}

Response Service::lambdas(const std::string& id, const Request& request) {
  const auto config = fit_config_from_query(request.query);
  const auto format = string_param(request.query, "format");
  if (!format.empty() && format != "json" && format != "csv") {
    throw Error(ErrorCode::InvalidRequest, fmt::format("unknown format '{}'", format));
  }
  const bool as_csv = format == "csv";
  const auto content_type = as_csv ? "text/csv" : "application/json";
  const auto key = fmt::format("lambdas|{}|{}", as_csv ? "csv" : "json", config.cache_key());
  if (auto hit = store_.cached(id, key)) return {200, content_type, std::move(*hit)};

  const auto dataset = store_.get(id);
  const auto fit = fit_for(id, *dataset, config);
  std::string body = as_csv ? lambda_csv(*fit) : json_io::to_json(*fit, config).dump();
  store_.cache(id, key, body);
  return {200, content_type, std::move(body)};
}

Response Service::metrics(const std::string& id, const Request& request) {
  const auto dataset = store_.get(id);
  const auto standard = find(request.query, "standard")
                            ? builtin_reference(*find(request.query, "standard"))
                            : builtin_reference("chondrite");
  const auto config = metrics_config_from_query(request.query);
  json rows = json::array();
  for (const auto& p : dataset->patterns) {
    rows.push_back(json_io::to_json(metric_report(p, standard, config)));
  }
  return json_response(200, {{"config", config.describe()}, {"rows", std::move(rows)}});
}

Response Service::viz(const std::string& id, const std::string& kind_text,
                      const Request& request) {
  const auto kind = viz::parse_kind(kind_text);
  const auto& q = request.query;
  const auto config = fit_config_from_query(q);
  const auto dataset = store_.get(id);
  const auto color_by = string_param(q, "color_by");

  if (kind == viz::VizKind::Spider) {
    return json_response(200, json_io::to_json(viz::spider_payload(*dataset, config.standard,
                                                                   color_by)));
  }
  const auto fit = fit_for(id, *dataset, config);
  viz::VizPayload payload;
  switch (kind) {
    case viz::VizKind::Scatter2d:
      payload = viz::scatter_payload(*dataset, *fit, int_param(q, "x", 0), int_param(q, "y", 1),
                                     color_by);
      break;
    case viz::VizKind::Scatter3d:
      payload = viz::scatter3d_payload(*dataset, *fit, int_param(q, "x", 2), int_param(q, "y", 1),
                                       int_param(q, "z", 0), color_by);
      break;
    case viz::VizKind::Splom: {
      const auto* indices = find(q, "indices");
      payload = viz::splom_payload(*dataset, *fit,
                                   indices ? index_list(*indices) : std::vector<int>{0, 1, 2},
                                   color_by);
      break;
    }
    case viz::VizKind::DensityContour: {
      viz::DensityConfig density;
      if (const auto* m = find(q, "marginal")) {
        const auto parsed = viz::parse_marginal(*m);
        if (!parsed) throw Error(ErrorCode::InvalidRequest, fmt::format("unknown marginal '{}'", *m));
        density.marginal = *parsed;
      }
      payload = viz::density_contour_payload(*dataset, *fit, int_param(q, "x", 0),
                                             int_param(q, "y", 1), color_by, density);
      break;
    }
    case viz::VizKind::Violin: {
      auto group_by = string_param(q, "group_by");
      if (group_by.empty()) group_by = color_by;
      payload = viz::violin_payload(*dataset, *fit, int_param(q, "y", 1), group_by);
      break;
    }
    case viz::VizKind::Spider: break;
  }
  return json_response(200, json_io::to_json(payload));
}

Response Service::sample(const std::string& id, const std::string& sample_id,
                         const Request& request) {
  const auto config = fit_config_from_query(request.query);
  const auto dataset = store_.get(id);
  const auto* pattern = dataset->find(sample_id);
  if (!pattern) {
    throw Error(ErrorCode::NotFound, fmt::format("no sample '{}' in dataset {}", sample_id, id));
  }
  const auto fit = fit_for(id, *dataset, config);
  json out = {{"dataset_id", id}, {"pattern", json_io::to_json(*pattern)}};
  out["lambdas"] = nullptr;
  out["anomalies"] = nullptr;
  for (std::size_t i = 0; i < fit->lambdas.size(); ++i) {
    if (fit->lambdas[i].sample_id == sample_id) {
      out["lambdas"] = json_io::to_json(fit->lambdas[i]);
      out["anomalies"] = json_io::to_json(fit->anomalies[i]);
    }
  }
  for (const auto& e : fit->errors) {
    if (e.sample_id == sample_id) out["error"] = json_io::to_json(e);
  }
  out["metrics"] = json_io::to_json(
      metric_report(*pattern, config.standard, metrics_config_from_query(request.query)));
  return json_response(200, out);
}

Response Service::sandbox_forward(const Request& request) const {
  const auto body = parse_body(request.body);
  if (!body.contains("lambdas") || !body["lambdas"].is_array()) {
    throw Error(ErrorCode::InvalidRequest, "lambdas must be an array of numbers");
  }
  const auto& values = body["lambdas"];
  const int degree_count = static_cast<int>(values.size());
  check_degree(degree_count);
  Eigen::VectorXd lambdas(degree_count);
  for (int j = 0; j < degree_count; ++j) {
    if (!values[j].is_number()) throw Error(ErrorCode::InvalidRequest, "lambdas must be numbers");
    lambdas(j) = values[j].get<double>();
  }
  const auto standard = body_standard(body);
  const auto basis = build_basis(canonical_radii(), degree_count);
  ElementSet all(kCanonicalElements.begin(), kCanonicalElements.end());
  json y = json::object();
  json concentrations = json::object();
  for (const auto& [e, point] : reconstruct(lambdas, basis, all, standard)) {
    y[std::string(symbol(e))] = point.y;
    concentrations[std::string(symbol(e))] = point.concentration_ppm;
  }
  return json_response(200, {{"standard", standard.name()},
                             {"degree_count", degree_count},
                             {"basis_id", basis_id(basis)},
                             {"y", std::move(y)},
                             {"pattern", std::move(concentrations)}});
}

Response Service::sandbox_inverse(const Request& request) const {
  const auto body = parse_body(request.body);
  const char* key = body.contains("pattern") ? "pattern" : "concentrations_ppm";
  if (!body.contains(key)) {
    throw Error(ErrorCode::InvalidRequest, "body needs a 'pattern' object of concentrations");
  }
  ReePattern pattern;
  pattern.sample_id = "sandbox";
  pattern.concentrations_ppm = json_io::element_map(body[key]);
  const auto standard = body_standard(body);
  int degree_count = kDefaultDegreeCount;
  if (body.contains("degree")) {
    if (!body["degree"].is_number_integer()) {
      throw Error(ErrorCode::InvalidRequest, "degree must be an integer");
    }
    degree_count = body["degree"].get<int>();
  }
  check_degree(degree_count);
  ElementSet exclusions;
  if (body.contains("exclude")) {
    if (!body["exclude"].is_array()) throw Error(ErrorCode::InvalidRequest, "exclude must be a list");
    for (const auto& v : body["exclude"]) {
      const auto e = v.is_string() ? parse_element(v.get<std::string>()) : std::nullopt;
      if (!e) throw Error(ErrorCode::InvalidRequest, "exclude must list element symbols");
      exclusions.insert(*e);
    }
  }

  const auto basis = build_basis(canonical_radii(), degree_count);
  LambdaSet fit;
  try {
    fit = fit_lambdas(normalize(pattern, standard, canonical_radii(), exclusions), basis);
  } catch (const Error& e) {
    // A sparse sandbox pattern is a point-count problem from the caller's side.
    if (e.code() == ErrorCode::TooFewElements) {
      throw Error(ErrorCode::TooFewPoints, e.what(), e.detail());
    }
    throw;
  }
  json out = json_io::to_json(fit);
  out["standard"] = standard.name();
  out["degree_count"] = degree_count;
  try {
    out["anomalies"] = json_io::to_json(
        anomaly_factors(pattern, standard, canonical_radii(), basis, exclusions));
  } catch (const Error&) {
    out["anomalies"] = nullptr;
  }
  return json_response(200, out);
}

Response Service::standards() const {
  json out = json::array();
  for (const auto& name : builtin_reference_names()) {
    const auto& s = builtin_reference(name);
    out.push_back({{"name", s.name()}, {"citation", s.citation()}});
  }
  return json_response(200, {{"standards", std::move(out)}});
}

struct HttpServer::Impl {
  Service& service;
  ServerOptions options;
  httplib::Server server;
  std::thread thread;

  Impl(Service& s, ServerOptions o) : service(s), options(std::move(o)) {
    server.set_payload_max_length(kMaxBodyBytes);
    const auto handler = [this](const httplib::Request& req, httplib::Response& res) {
      Request request{req.method, req.path, {}, req.body};
      for (const auto& [k, v] : req.params) request.query[k] = v;
      const auto response = service.handle(request);
      res.status = response.status;
      res.set_content(response.body, response.content_type);
    };
    server.Get(".*", handler);
    server.Post(".*", handler);
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (!res.body.empty()) return;
      const auto code = res.status == 413 ? ErrorCode::PayloadTooLarge
                        : res.status == 404 ? ErrorCode::NotFound
                                            : ErrorCode::InvalidRequest;
      res.set_content(json_io::error_body(code, httplib::status_message(res.status)).dump(),
                      "application/json");
    });
    server.set_exception_handler(
        [](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
          res.status = 500;
          res.set_content(json_io::error_body(ErrorCode::Internal, "internal error").dump(),
                          "application/json");
        });
  }
};

HttpServer::HttpServer(Service& service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start() {
  int port = impl_->options.port;
  if (port == 0) {
    port = impl_->server.bind_to_any_port(impl_->options.host);
  } else if (!impl_->server.bind_to_port(impl_->options.host, port)) {
    port = -1;
  }
  if (port < 0) {
    throw Error(ErrorCode::InvalidRequest,
                fmt::format("cannot bind {}:{}", impl_->options.host, impl_->options.port));
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

bool HttpServer::run() {
  return impl_->server.listen(impl_->options.host, impl_->options.port);
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace reekit::service
