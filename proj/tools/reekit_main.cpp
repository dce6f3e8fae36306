// reekit: batch fit, metrics and plots over REE CSV files, plus the HTTP service.
//
// Exit codes: 0 success, 1 output not writable, 2 bad input or arguments,
// 3 nothing could be fitted.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "reekit/ingestion.hpp"
#include "reekit/lambda.hpp"
#include "reekit/metrics.hpp"
#include "reekit/service.hpp"
#include "reekit/store.hpp"
#include "reekit/svg.hpp"
#include "reekit/viz.hpp"
#include "reekit/json_io.hpp"

namespace {

using namespace reekit;

enum Exit { kOk = 0, kWriteFailed = 1, kBadInput = 2, kNothingFitted = 3 };

struct ExitError {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ExitError{kBadInput, fmt::format("cannot read {}", path)};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout.write(content.data(), static_cast<std::streamsize>(content.size()));
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ExitError{kWriteFailed, fmt::format("cannot write {}", path)};
}

void print_report(const ImportReport& report) {
  fmt::print(stderr, "imported {} rows ({} rejected); elements {}; unit {}\n",
             report.rows_accepted, report.rows_rejected.size(),
             fmt::join(report.detected_elements, ","), to_string(report.unit_assumption));
  if (!report.detected_categories.empty()) {
    fmt::print(stderr, "categories: {}\n", fmt::join(report.detected_categories, ","));
  }
  for (const auto& r : report.rows_rejected) {
    fmt::print(stderr, "  line {}: {} {}\n", r.line, to_string(r.code), r.reason);
  }
  for (const auto& note : report.notes) fmt::print(stderr, "  note: {}\n", note);
}

// Options shared by fit and plot.
struct FitOptions {
  std::string input;
  std::string standard = "chondrite";
  int degree = kDefaultDegreeCount;
  std::string exclude;
  std::string weights = "uniform";
  std::string nonpositive = "reject";
  std::string unit = "ppm";
  char delimiter = ',';

  void add_to(CLI::App& cmd) {
    cmd.add_option("input", input, "Input CSV")->required();
    cmd.add_option("--standard", standard, "Reference standard name or CSV path");
    cmd.add_option("--degree", degree, "Number of lambdas (degree count)");
    cmd.add_option("--exclude", exclude, "Elements left out of the fit, e.g. Ce,Eu");
    cmd.add_option("--weights", weights, "uniform | inverse-variance");
    cmd.add_option("--nonpositive", nonpositive,
                   "reject | drop-nonpositive | replace-half-detection-limit");
    cmd.add_option("--unit", unit, "Concentration unit of unlabelled columns: ppm | wt%");
    cmd.add_option("--delimiter", delimiter, "Field delimiter");
  }

  ImportOptions import_options() const {
    ImportOptions o;
    o.delimiter = delimiter;
    const auto u = parse_unit(unit);
    if (!u) throw ExitError{kBadInput, fmt::format("unknown unit '{}'", unit)};
    o.unit = *u;
    o.nonpositive = nonpositive_policy();
    o.source_name = input;
    return o;
  }

  NonPositivePolicy nonpositive_policy() const {
    const auto p = parse_nonpositive_policy(nonpositive);
    if (!p) throw ExitError{kBadInput, fmt::format("unknown --nonpositive '{}'", nonpositive)};
    return *p;
  }

  FitConfig fit_config() const {
    FitConfig config;
    config.standard = resolve_reference(standard);
    if (degree < kMinDegreeCount || degree > kMaxDegreeCount) {
      throw Error(ErrorCode::DegreeOutOfRange,
                  fmt::format("--degree must be in {}..{}, got {}", kMinDegreeCount,
                              kMaxDegreeCount, degree));
    }
    config.degree_count = degree;
    if (!exclude.empty()) config.exclusions = parse_element_list(exclude);
    const auto w = parse_weights_policy(weights);
    if (!w) throw ExitError{kBadInput, fmt::format("unknown --weights '{}'", weights)};
    config.weights = *w;
    config.nonpositive = nonpositive_policy();
    return config;
  }

  ImportResult load() const {
    auto result = parse_csv(read_file(input), import_options());
    print_report(result.report);
    return result;
  }
};

DatasetFit fit_or_exit(const Dataset& dataset, const FitConfig& config) {
  auto fit = fit_dataset(dataset, config);
  for (const auto& e : fit.errors) {
    fmt::print(stderr, "  sample {}: {} {}\n", e.sample_id, to_string(e.code), e.message);
  }
  if (fit.lambdas.empty()) throw ExitError{kNothingFitted, "no sample could be fitted"};
  return fit;
}

int run_fit(const FitOptions& options, const std::string& output) {
  const auto config = options.fit_config();
  const auto imported = options.load();
  const auto fit = fit_or_exit(imported.dataset, config);
  fmt::print(stderr, "fitted {} of {} samples\n", fit.lambdas.size(),
             imported.dataset.patterns.size());
  write_output(output, lambda_csv(fit));
  return kOk;
}

struct PlotOptions {
  std::string kind;
  std::string color_by;
  int x = -1;
  int y = -1;
  int z = -1;
  std::vector<int> indices;
  std::string marginal = "histogram";
  int width = 800;
  int height = 600;
  std::string theme = "light";
  std::string format = "svg";
};

int run_plot(const FitOptions& options, const PlotOptions& plot, const std::string& output) {
  const auto kind = viz::parse_kind(plot.kind);
  const auto config = options.fit_config();
  const auto imported = options.load();
  const auto& dataset = imported.dataset;
  const auto pick = [](int value, int fallback) { return value >= 0 ? value : fallback; };

  viz::VizPayload payload;
  if (kind == viz::VizKind::Spider) {
    payload = viz::spider_payload(dataset, config.standard, plot.color_by);
  } else {
    const auto fit = fit_or_exit(dataset, config);
    switch (kind) {
      case viz::VizKind::Scatter2d:
        payload = viz::scatter_payload(dataset, fit, pick(plot.x, 0), pick(plot.y, 1),
                                       plot.color_by);
        break;
      case viz::VizKind::Scatter3d:
        payload = viz::scatter3d_payload(dataset, fit, pick(plot.x, 2), pick(plot.y, 1),
                                         pick(plot.z, 0), plot.color_by);
        break;
      case viz::VizKind::Splom:
        payload = viz::splom_payload(
            dataset, fit, plot.indices.empty() ? std::vector<int>{0, 1, 2} : plot.indices,
            plot.color_by);
        break;
      case viz::VizKind::DensityContour: {
        viz::DensityConfig density;
        const auto m = viz::parse_marginal(plot.marginal);
        if (!m) throw ExitError{kBadInput, fmt::format("unknown --marginal '{}'", plot.marginal)};
        density.marginal = *m;
        payload = viz::density_contour_payload(dataset, fit, pick(plot.x, 0), pick(plot.y, 1),
                                               plot.color_by, density);
        break;
      }
      case viz::VizKind::Violin:
        payload = viz::violin_payload(dataset, fit, pick(plot.y, 1), plot.color_by);
        break;
      case viz::VizKind::Spider: break;
    }
  }

  if (plot.format == "json") {
    write_output(output, json_io::to_json(payload).dump(2) + "\n");
    return kOk;
  }
  if (plot.format != "svg") throw ExitError{kBadInput, fmt::format("unknown --format '{}'", plot.format)};
  viz::SvgOptions svg;
  svg.width = plot.width;
  svg.height = plot.height;
  const auto theme = viz::parse_theme(plot.theme);
  if (!theme) throw ExitError{kBadInput, fmt::format("unknown --theme '{}'", plot.theme)};
  svg.theme = *theme;
  write_output(output, viz::export_svg(payload, svg));
  return kOk;
}

struct MetricsOptions {
  std::string prices;
  std::string ce_oxide = "Ce2O3";
  std::string pr_oxide = "Pr2O3";
  std::string ndpr_basis = "metal";
};

int run_metrics(const FitOptions& options, const MetricsOptions& m, const std::string& output) {
  MetricsConfig config;
  const auto ce = parse_cerium_oxide(m.ce_oxide);
  const auto pr = parse_praseodymium_oxide(m.pr_oxide);
  const auto basis = parse_ndpr_basis(m.ndpr_basis);
  if (!ce || !pr || !basis) throw ExitError{kBadInput, "unknown oxide or NdPr basis option"};
  config.cerium = *ce;
  config.praseodymium = *pr;
  config.ndpr_basis = *basis;

  std::optional<PriceTable> prices;
  if (!m.prices.empty()) prices = parse_price_csv(read_file(m.prices));
  const auto standard = resolve_reference(options.standard);
  const auto imported = options.load();

  std::vector<MetricReport> reports;
  for (const auto& p : imported.dataset.patterns) {
    reports.push_back(metric_report(p, standard, config, prices ? &*prices : nullptr));
    for (const auto& note : reports.back().notes) {
      fmt::print(stderr, "  sample {}: {}\n", p.sample_id, note);
    }
  }
  write_output(output, metrics_csv(reports));
  return kOk;
}

int run_serve(const std::string& host, int port, const std::string& data_dir) {
  // Signals are taken synchronously so shutdown happens outside a handler.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  DatasetStore store{std::filesystem::path(data_dir)};
  service::Service api(store);
  service::HttpServer server(api, {host, port});
  const int bound = server.start();
  fmt::print(stderr, "serving on http://{}:{}/v1 (data: {})\n", host, bound,
             data_dir.empty() ? "memory" : data_dir);
  int received = 0;
  sigwait(&signals, &received);
  server.stop();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"REE pattern lambdas, metrics and plots"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  FitOptions fit_options;
  std::string output = "-";

  auto* fit = app.add_subcommand("fit", "Fit lambdas for every sample and write the lambda CSV");
  fit_options.add_to(*fit);
  fit->add_option("-o,--output", output, "Output path, - for stdout");

  PlotOptions plot_options;
  auto* plot = app.add_subcommand("plot", "Render one of the six visualisations to SVG");
  fit_options.add_to(*plot);
  plot->add_option("--kind", plot_options.kind,
                   "spider | scatter2d | scatter3d | splom | density_contour | violin")
      ->required();
  plot->add_option("--color-by", plot_options.color_by, "Category for colour (group for violin)");
  plot->add_option("--x", plot_options.x, "Lambda index on x");
  plot->add_option("--y", plot_options.y, "Lambda index on y");
  plot->add_option("--z", plot_options.z, "Lambda index on z");
  plot->add_option("--indices", plot_options.indices, "Lambda indices for splom")->delimiter(',');
  plot->add_option("--marginal", plot_options.marginal, "histogram | rug");
  plot->add_option("--width", plot_options.width, "SVG width");
  plot->add_option("--height", plot_options.height, "SVG height");
  plot->add_option("--theme", plot_options.theme, "light | dark");
  plot->add_option("--format", plot_options.format, "svg | json (payload)");
  plot->add_option("-o,--output", output, "Output path, - for stdout");

  MetricsOptions metrics_options;
  auto* metrics = app.add_subcommand("metrics", "Write TREO, NdPr, LREE/HREE and shape ratios");
  metrics->add_option("input", fit_options.input, "Input CSV")->required();
  metrics->add_option("--standard", fit_options.standard, "Reference for shape ratios");
  metrics->add_option("--nonpositive", fit_options.nonpositive, "Import policy");
  metrics->add_option("--unit", fit_options.unit, "ppm | wt%");
  metrics->add_option("--delimiter", fit_options.delimiter, "Field delimiter");
  metrics->add_option("--prices", metrics_options.prices, "CSV element,usd_per_kg_oxide");
  metrics->add_option("--ce-oxide", metrics_options.ce_oxide, "Ce2O3 | CeO2");
  metrics->add_option("--pr-oxide", metrics_options.pr_oxide, "Pr2O3 | Pr6O11");
  metrics->add_option("--ndpr-basis", metrics_options.ndpr_basis, "metal | oxide");
  metrics->add_option("-o,--output", output, "Output path, - for stdout");

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir;
  if (const char* env = std::getenv("REEKIT_DATA_DIR")) data_dir = env;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service until interrupted");
  serve->add_option("--port", port, "Port");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--data-dir", data_dir, "Dataset store directory (default $REEKIT_DATA_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (fit->parsed()) return run_fit(fit_options, output);
    if (plot->parsed()) return run_plot(fit_options, plot_options, output);
    if (metrics->parsed()) return run_metrics(fit_options, metrics_options, output);
    if (serve->parsed()) return run_serve(host, port, data_dir);
  } catch (const ExitError& e) {
    fmt::print(stderr, "reekit: {}\n", e.message);
    return e.code;
  } catch (const Error& e) {
    fmt::print(stderr, "reekit: {}: {}\n", to_string(e.code()), e.what());
    for (const auto& d : e.detail()) fmt::print(stderr, "  {}\n", d);
    return kBadInput;
  }
  return kBadInput;
}
