#include "reekit/viz.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "reekit/error.hpp"

namespace reekit::viz {

std::string_view to_string(VizKind kind) noexcept {
  switch (kind) {
    case VizKind::Spider: return "spider";
    case VizKind::Scatter2d: return "scatter2d";
    case VizKind::Scatter3d: return "scatter3d";
    case VizKind::Splom: return "splom";
    case VizKind::DensityContour: return "density_contour";
    case VizKind::Violin: return "violin";
  }
  return "spider";
}

VizKind parse_kind(std::string_view text) {
  for (VizKind k : kAllKinds) {
    if (to_string(k) == text) return k;
  }
  if (text == "scatter") return VizKind::Scatter2d;
  if (text == "scatter3") return VizKind::Scatter3d;
  if (text == "density" || text == "contour") return VizKind::DensityContour;
  throw Error(ErrorCode::UnsupportedKind,
              fmt::format("unknown visualisation '{}' (spider, scatter2d, scatter3d, splom, "
                          "density_contour, violin)",
                          text));
}

std::string lambda_label(int index) {
  switch (index) {
    case 0: return "λ0 (REE abundance)";
    case 1: return "λ1 (heavy or light REE enrichment)";
    case 2: return "λ2 (enrichment of middle REEs)";
    case 3: return "λ3 (sinusoidality)";
    default: return fmt::format("λ{}", index);
  }
}

std::string_view to_string(MarginalKind kind) noexcept {
  return kind == MarginalKind::Histogram ? "histogram" : "rug";
}

std::optional<MarginalKind> parse_marginal(std::string_view text) noexcept {
  if (text == "histogram") return MarginalKind::Histogram;
  if (text == "rug") return MarginalKind::Rug;
  return std::nullopt;
}

namespace {

void check_category(const Dataset& dataset, const std::string& category) {
  if (category.empty()) return;
  if (std::find(dataset.category_schema.begin(), dataset.category_schema.end(), category) ==
      dataset.category_schema.end()) {
    std::string valid;
    for (const auto& c : dataset.category_schema) valid += (valid.empty() ? "" : ", ") + c;
    throw Error(ErrorCode::UnknownCategory,
                fmt::format("unknown category '{}' (valid: {})", category,
                            valid.empty() ? "none" : valid),
                dataset.category_schema);
  }
}

std::string group_of(const ReePattern* pattern, const std::string& category) {
  if (category.empty() || !pattern) return std::string(kAllGroup);
  const auto it = pattern->categories.find(category);
  return it == pattern->categories.end() ? std::string(kUnknownCategory) : it->second;
}

void check_index(int index, int degree_count) {
  if (index < 0 || index >= degree_count) {
    throw Error(ErrorCode::IndexOutOfRange,
                fmt::format("lambda index {} outside 0..{}", index, degree_count - 1));
  }
}

std::vector<std::string> sorted_groups(const std::set<std::string>& groups) {
  return {groups.begin(), groups.end()};
}

Eigen::VectorXd linspace(double lo, double hi, int n) {
  return Eigen::VectorXd::LinSpaced(n, lo, hi);
}

// Shared prologue for the lambda-based payloads.
VizPayload lambda_payload(VizKind kind, const Dataset& dataset, const DatasetFit& fit,
                          const std::vector<int>& indices, const std::string& color_by) {
  check_category(dataset, color_by);
  for (int i : indices) check_index(i, fit.degree_count);
  VizPayload p;
  p.kind = kind;
  p.color_key = color_by;
  std::set<std::string> groups;
  for (const auto& l : fit.lambdas) {
    p.point_refs.push_back(l.sample_id);
    groups.insert(group_of(dataset.find(l.sample_id), color_by));
  }
  p.groups = sorted_groups(groups);
  for (int i : indices) p.axis_labels.push_back(lambda_label(i));
  return p;
}

}  // namespace

VizPayload spider_payload(const Dataset& dataset, const ReferenceStandard& standard,
                          const std::string& color_by) {
  check_category(dataset, color_by);
  VizPayload p;
  p.kind = VizKind::Spider;
  p.color_key = color_by;
  p.axis_labels = {"ionic radius (pm)", fmt::format("sample / {}", standard.name())};

  SpiderSeries s;
  s.reference = standard.name();
  const RadiiTable& radii = canonical_radii();
  for (Element e : kCanonicalElements) {
    s.elements.emplace_back(symbol(e));
    s.radii_pm.push_back(radii.radius(e));
  }
  std::set<std::string> groups;
  for (const auto& pattern : dataset.patterns) {
    SpiderLine line;
    line.group = group_of(&pattern, color_by);
    line.ref = p.point_refs.size();
    std::size_t present = 0;
    for (Element e : kCanonicalElements) {
      const auto c = pattern.concentration(e);
      if (c && *c > 0.0) {
        line.values.emplace_back(*c / standard.value(e));
        ++present;
      } else {
        line.values.emplace_back(std::nullopt);
      }
    }
    if (present == 0) {
      s.skipped.push_back({pattern.sample_id, ErrorCode::NonPositiveConcentration,
                           "no positive concentrations"});
      continue;
    }
    groups.insert(line.group);
    p.point_refs.push_back(pattern.sample_id);
    s.lines.push_back(std::move(line));
  }
  p.groups = sorted_groups(groups);
  p.series = std::move(s);
  return p;
}

VizPayload scatter_payload(const Dataset& dataset, const DatasetFit& fit, int x, int y,
                           const std::string& color_by) {
  VizPayload p = lambda_payload(VizKind::Scatter2d, dataset, fit, {x, y}, color_by);
  ScatterSeries s;
  s.axes = {x, y};
  for (std::size_t i = 0; i < fit.lambdas.size(); ++i) {
    const auto& l = fit.lambdas[i].lambdas;
    s.points.push_back({{l(x), l(y)}, group_of(dataset.find(p.point_refs[i]), color_by), i});
  }
  p.series = std::move(s);
  return p;
}

VizPayload scatter3d_payload(const Dataset& dataset, const DatasetFit& fit, int x, int y, int z,
                             const std::string& color_by) {
  VizPayload p = lambda_payload(VizKind::Scatter3d, dataset, fit, {x, y, z}, color_by);
  ScatterSeries s;
  s.axes = {x, y, z};
  for (std::size_t i = 0; i < fit.lambdas.size(); ++i) {
    const auto& l = fit.lambdas[i].lambdas;
    s.points.push_back({{l(x), l(y), l(z)}, group_of(dataset.find(p.point_refs[i]), color_by), i});
  }
  p.series = std::move(s);
  return p;
}

VizPayload splom_payload(const Dataset& dataset, const DatasetFit& fit,
                         const std::vector<int>& indices, const std::string& color_by) {
  if (indices.size() < 2) {
    throw Error(ErrorCode::IndexOutOfRange, "a scatter plot matrix needs at least two lambdas");
  }
  VizPayload p = lambda_payload(VizKind::Splom, dataset, fit, indices, color_by);
  SplomSeries s;
  s.indices = indices;
  for (std::size_t i = 0; i < fit.lambdas.size(); ++i) {
    s.groups.push_back(group_of(dataset.find(p.point_refs[i]), color_by));
    s.refs.push_back(i);
  }
  std::vector<std::vector<double>> columns(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    for (const auto& l : fit.lambdas) columns[k].push_back(l.lambdas(indices[k]));
    Range r;
    if (!columns[k].empty()) {
      const auto [lo, hi] = std::minmax_element(columns[k].begin(), columns[k].end());
      r = {*lo, *hi};
    }
    s.ranges.push_back(r);
  }
  for (std::size_t row = 0; row < indices.size(); ++row) {
    for (std::size_t col = 0; col < indices.size(); ++col) {
      SplomPanel panel{static_cast<int>(row), static_cast<int>(col), indices[col], indices[row],
                       row == col, {}, {}};
      if (panel.diagonal) {
        panel.histogram = kde::histogram(columns[row]);
      } else {
        for (std::size_t i = 0; i < columns[col].size(); ++i) {
          panel.points.push_back({columns[col][i], columns[row][i]});
        }
      }
      s.panels.push_back(std::move(panel));
    }
  }
  p.series = std::move(s);
  return p;
}

DensityGrid density_grid(const Eigen::Ref<const Eigen::VectorXd>& x,
                         const Eigen::Ref<const Eigen::VectorXd>& y, const DensityConfig& config) {
  DensityGrid g;
  g.bandwidth = kde::silverman_bandwidth_2d(x, y);
  const double pad_x = config.padding_bandwidths * g.bandwidth(0);
  const double pad_y = config.padding_bandwidths * g.bandwidth(1);
  g.x_grid = linspace(x.minCoeff() - pad_x, x.maxCoeff() + pad_x, config.grid_size);
  g.y_grid = linspace(y.minCoeff() - pad_y, y.maxCoeff() + pad_y, config.grid_size);
  g.density = kde::density_2d(x, y, g.bandwidth, g.x_grid, g.y_grid);

  const double peak = g.density.maxCoeff();
  for (int k = 0; k < config.contour_levels; ++k) {
    const double fraction =
        config.contour_levels == 1
            ? config.low_fraction
            : config.low_fraction + (config.high_fraction - config.low_fraction) * k /
                                        (config.contour_levels - 1);
    const double level = fraction * peak;
    g.contour_levels.push_back(level);
    g.contours.push_back({level, contour::isolines(g.density, g.x_grid, g.y_grid, level)});
  }

  std::vector<double> xs(x.data(), x.data() + x.size());
  std::vector<double> ys(y.data(), y.data() + y.size());
  g.marginal.kind = config.marginal;
  if (config.marginal == MarginalKind::Histogram) {
    g.marginal.x_histogram = kde::histogram(xs);
    g.marginal.y_histogram = kde::histogram(ys);
  } else {
    g.marginal.x_rug = xs;
    g.marginal.y_rug = ys;
  }
  for (Eigen::Index i = 0; i < x.size(); ++i) g.points.push_back({x(i), y(i)});
  return g;
}

VizPayload density_contour_payload(const Dataset& dataset, const DatasetFit& fit, int x, int y,
                                   const std::string& color_by, const DensityConfig& config) {
  VizPayload p = lambda_payload(VizKind::DensityContour, dataset, fit, {x, y}, color_by);
  DensitySeries s;
  s.x = x;
  s.y = y;
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < fit.lambdas.size(); ++i) {
    members[group_of(dataset.find(p.point_refs[i]), color_by)].push_back(i);
  }
  for (const auto& [group, refs] : members) {
    if (refs.size() < 3) {
      s.skipped.push_back(group);
      continue;
    }
    Eigen::VectorXd xs(static_cast<Eigen::Index>(refs.size()));
    Eigen::VectorXd ys(xs.size());
    for (std::size_t k = 0; k < refs.size(); ++k) {
      xs(static_cast<Eigen::Index>(k)) = fit.lambdas[refs[k]].lambdas(x);
      ys(static_cast<Eigen::Index>(k)) = fit.lambdas[refs[k]].lambdas(y);
    }
    DensityGrid g = density_grid(xs, ys, config);
    g.group = group;
    g.refs = refs;
    s.grids.push_back(std::move(g));
  }
  p.series = std::move(s);
  return p;
}

ViolinGroup violin_group(const std::vector<double>& values, const ViolinConfig& config) {
  ViolinGroup v;
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  v.q1 = kde::quantile_sorted(sorted, 0.25);
  v.median = kde::quantile_sorted(sorted, 0.5);
  v.q3 = kde::quantile_sorted(sorted, 0.75);
  const double iqr = v.q3 - v.q1;
  v.whisker_low = *std::lower_bound(sorted.begin(), sorted.end(), v.q1 - 1.5 * iqr);
  v.whisker_high = *(std::upper_bound(sorted.begin(), sorted.end(), v.q3 + 1.5 * iqr) - 1);

  v.bandwidth = kde::silverman_bandwidth(values);
  const double pad = config.padding_bandwidths * v.bandwidth;
  const Eigen::VectorXd at = linspace(sorted.front() - pad, sorted.back() + pad, config.points);
  const Eigen::Map<const Eigen::VectorXd> samples(values.data(),
                                                  static_cast<Eigen::Index>(values.size()));
  const Eigen::VectorXd density = kde::density_1d(samples, v.bandwidth, at);
  v.positions.assign(at.data(), at.data() + at.size());
  v.densities.assign(density.data(), density.data() + density.size());
  v.values = values;
  return v;
}

VizPayload violin_payload(const Dataset& dataset, const DatasetFit& fit, int y,
                          const std::string& group_by, const ViolinConfig& config) {
  VizPayload p = lambda_payload(VizKind::Violin, dataset, fit, {y}, group_by);
  p.axis_labels.insert(p.axis_labels.begin(), group_by.empty() ? std::string(kAllGroup) : group_by);
  ViolinSeries s;
  s.y = y;
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < fit.lambdas.size(); ++i) {
    members[group_of(dataset.find(p.point_refs[i]), group_by)].push_back(i);
  }
  for (const auto& [group, refs] : members) {
    if (refs.size() < 2) {
      s.skipped.push_back(group);
      continue;
    }
    std::vector<double> values;
    for (std::size_t r : refs) values.push_back(fit.lambdas[r].lambdas(y));
    ViolinGroup g = violin_group(values, config);
    g.group = group;
    g.refs = refs;
    s.groups.push_back(std::move(g));
  }
  p.series = std::move(s);
  return p;
}

}  // namespace reekit::viz
