#include "reekit/json_io.hpp"

#include <fmt/format.h>

namespace reekit::json_io {

namespace {

json element_object(const std::map<Element, double>& values) {
  json out = json::object();
  for (const auto& [e, v] : values) out[std::string(symbol(e))] = v;
  return out;
}

json element_list(const ElementSet& elements) {
  json out = json::array();
  for (Element e : elements) out.push_back(std::string(symbol(e)));
  return out;
}

json vector_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json histogram_json(const kde::Histogram& h) { return {{"edges", h.edges}, {"counts", h.counts}}; }

json polyline_json(const contour::Polyline& line) {
  json pts = json::array();
  for (const auto& p : line.points) pts.push_back({p.x(), p.y()});
  return {{"closed", line.closed}, {"points", std::move(pts)}};
}

json series_json(const viz::SpiderSeries& s) {
  json lines = json::array();
  for (const auto& l : s.lines) {
    json values = json::array();
    for (const auto& v : l.values) values.push_back(v ? json(*v) : json(nullptr));
    lines.push_back({{"group", l.group}, {"ref", l.ref}, {"values", std::move(values)}});
  }
  json skipped = json::array();
  for (const auto& e : s.skipped) skipped.push_back(to_json(e));
  return {{"elements", s.elements}, {"radii_pm", s.radii_pm}, {"reference", s.reference},
          {"log_scale", s.log_scale}, {"lines", std::move(lines)}, {"skipped", std::move(skipped)}};
}

json series_json(const viz::ScatterSeries& s) {
  json points = json::array();
  for (const auto& p : s.points) {
    points.push_back({{"coords", p.coords}, {"group", p.group}, {"ref", p.ref}});
  }
  return {{"axes", s.axes}, {"points", std::move(points)}};
}

json series_json(const viz::SplomSeries& s) {
  json ranges = json::array();
  for (const auto& r : s.ranges) ranges.push_back({{"min", r.min}, {"max", r.max}});
  json panels = json::array();
  for (const auto& p : s.panels) {
    json panel = {{"row", p.row}, {"col", p.col}, {"x", p.x_index}, {"y", p.y_index},
                  {"diagonal", p.diagonal}};
    if (p.diagonal) {
      panel["histogram"] = histogram_json(p.histogram);
    } else {
      panel["points"] = p.points;
    }
    panels.push_back(std::move(panel));
  }
  return {{"indices", s.indices}, {"ranges", std::move(ranges)}, {"groups", s.groups},
          {"refs", s.refs},       {"panels", std::move(panels)}};
}

json series_json(const viz::DensitySeries& s) {
  json grids = json::array();
  for (const auto& g : s.grids) {
    json density = json::array();
    for (Eigen::Index i = 0; i < g.density.rows(); ++i) {
      const Eigen::VectorXd row = g.density.row(i).transpose();
      density.push_back(vector_json(row));
    }
    json contours = json::array();
    for (const auto& level : g.contours) {
      json lines = json::array();
      for (const auto& l : level.lines) lines.push_back(polyline_json(l));
      contours.push_back({{"level", level.level}, {"lines", std::move(lines)}});
    }
    json marginal = {{"kind", viz::to_string(g.marginal.kind)}};
    if (g.marginal.x_histogram) marginal["x_histogram"] = histogram_json(*g.marginal.x_histogram);
    if (g.marginal.y_histogram) marginal["y_histogram"] = histogram_json(*g.marginal.y_histogram);
    if (g.marginal.kind == viz::MarginalKind::Rug) {
      marginal["rug"] = {{"x", g.marginal.x_rug}, {"y", g.marginal.y_rug}};
    }
    grids.push_back({{"group", g.group},
                     {"x_grid", vector_json(g.x_grid)},
                     {"y_grid", vector_json(g.y_grid)},
                     {"density", std::move(density)},
                     {"bandwidth", {g.bandwidth(0), g.bandwidth(1)}},
                     {"contour_levels", g.contour_levels},
                     {"contours", std::move(contours)},
                     {"marginal", std::move(marginal)},
                     {"points", g.points},
                     {"refs", g.refs}});
  }
  return {{"x", s.x}, {"y", s.y}, {"grids", std::move(grids)}, {"skipped", s.skipped}};
}

json series_json(const viz::ViolinSeries& s) {
  json groups = json::array();
  for (const auto& g : s.groups) {
    groups.push_back({{"group", g.group},
                      {"positions", g.positions},
                      {"densities", g.densities},
                      {"bandwidth", g.bandwidth},
                      {"q1", g.q1},
                      {"median", g.median},
                      {"q3", g.q3},
                      {"whisker_low", g.whisker_low},
                      {"whisker_high", g.whisker_high},
                      {"values", g.values},
                      {"refs", g.refs}});
  }
  return {{"y", s.y}, {"groups", std::move(groups)}, {"skipped", s.skipped}};
}

}  // namespace

json error_body(ErrorCode code, std::string_view message, const std::vector<std::string>& detail) {
  json body = {{"code", to_string(code)}, {"message", message}};
  if (!detail.empty()) body["detail"] = detail;
  return body;
}

json to_json(const ImportReport& r) {
  json rejected = json::array();
  for (const auto& row : r.rows_rejected) {
    rejected.push_back({{"line", row.line}, {"code", to_string(row.code)}, {"reason", row.reason}});
  }
  return {{"dataset_id", r.dataset_id},
          {"rows_accepted", r.rows_accepted},
          {"rows_rejected", std::move(rejected)},
          {"detected_elements", r.detected_elements},
          {"detected_categories", r.detected_categories},
          {"unit_assumption", to_string(r.unit_assumption)},
          {"notes", r.notes}};
}

json to_json(const DatasetSummary& s) {
  return {{"dataset_id", s.dataset_id}, {"name", s.name}, {"rows", s.rows},
          {"categories", s.categories}};
}

json to_json(const ReePattern& p) {
  json out = {{"sample", p.sample_id},
              {"concentrations_ppm", element_object(p.concentrations_ppm)},
              {"categories", p.categories}};
  if (!p.uncertainties_ppm.empty()) out["uncertainties_ppm"] = element_object(p.uncertainties_ppm);
  return out;
}

json to_json(const LambdaSet& l) {
  return {{"sample", l.sample_id},        {"lambdas", vector_json(l.lambdas)},
          {"rms_misfit", l.rms_misfit},   {"residuals", element_object(l.residuals)},
          {"excluded", element_list(l.excluded)}, {"basis_id", l.basis_id}};
}

json to_json(const AnomalyReport& a) {
  return {{"sample", a.sample_id}, {"factors", element_object(a.factors)}, {"basis_id", a.basis_id}};
}

json to_json(const SampleError& e) {
  return {{"sample", e.sample_id}, {"code", to_string(e.code)}, {"message", e.message}};
}

json to_json(const MetricReport& m) {
  const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"sample", m.sample_id},
          {"treo_ppm", m.treo_ppm},
          {"ndpr_fraction", opt(m.ndpr_fraction)},
          {"lree_hree_ratio", opt(m.lree_hree_ratio)},
          {"ratios", m.ratios},
          {"basket_value_usd_per_tonne", opt(m.basket_value_usd_per_tonne)},
          {"notes", m.notes}};
}

json to_json(const DatasetFit& fit, const FitConfig& config) {
  json rows = json::array();
  for (std::size_t i = 0; i < fit.lambdas.size(); ++i) {
    json row = to_json(fit.lambdas[i]);
    row["anomalies"] = element_object(fit.anomalies[i].factors);
    rows.push_back(std::move(row));
  }
  json errors = json::array();
  for (const auto& e : fit.errors) errors.push_back(to_json(e));
  return {{"schema", kLambdaSchema},
          {"metadata",
           {{"log_base", kLogBase},
            {"fit_space", "ln(sample / reference)"},
            {"radius_unit", "pm"},
            {"standard", config.standard.name()},
            {"degree_count", config.degree_count},
            {"exclusions", element_list(config.exclusions)},
            {"weights", to_string(config.weights)},
            {"nonpositive", to_string(config.nonpositive)}}},
          {"rows", std::move(rows)},
          {"errors", std::move(errors)}};
}

json to_json(const viz::VizPayload& p) {
  json series = std::visit([](const auto& s) { return series_json(s); }, p.series);
  return {{"schema", kVizSchema},         {"kind", viz::to_string(p.kind)},
          {"axis_labels", p.axis_labels}, {"color_key", p.color_key},
          {"groups", p.groups},           {"point_refs", p.point_refs},
          {"series", std::move(series)}};
}

std::map<Element, double> element_map(const json& object) {
  if (!object.is_object()) throw Error(ErrorCode::InvalidRequest, "expected an element-keyed object");
  std::map<Element, double> out;
  for (const auto& [key, value] : object.items()) {
    const auto e = parse_element(key);
    if (!e) throw Error(ErrorCode::InvalidRequest, fmt::format("unknown element '{}'", key));
    if (!value.is_number()) {
      throw Error(ErrorCode::InvalidRequest, fmt::format("value for {} is not a number", key));
    }
    out[*e] = value.get<double>();
  }
  return out;
}

}  // namespace reekit::json_io
