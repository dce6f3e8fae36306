#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "reekit/contour.hpp"
#include "reekit/domain.hpp"
#include "reekit/kde.hpp"
#include "reekit/lambda.hpp"

namespace reekit::viz {

enum class VizKind { Spider, Scatter2d, Scatter3d, Splom, DensityContour, Violin };

inline constexpr std::array<VizKind, 6> kAllKinds = {VizKind::Spider,  VizKind::Scatter2d,
                                                     VizKind::Scatter3d, VizKind::Splom,
                                                     VizKind::DensityContour, VizKind::Violin};

std::string_view to_string(VizKind kind) noexcept;
// Throws Error(UnsupportedKind).
VizKind parse_kind(std::string_view text);

// "λ0 (REE abundance)" etc.
std::string lambda_label(int index);

// Group used when no colour category is requested.
inline constexpr std::string_view kAllGroup = "all";

struct SpiderLine {
  std::string group;
  std::size_t ref;                           // index into VizPayload::point_refs
  std::vector<std::optional<double>> values;  // sample / reference, canonical order; nullopt = gap
};

struct SpiderSeries {
  std::vector<std::string> elements;
  std::vector<double> radii_pm;
  std::string reference;
  bool log_scale = true;
  std::vector<SpiderLine> lines;
  std::vector<SampleError> skipped;
};

struct ScatterPoint {
  std::vector<double> coords;  // one per axis
  std::string group;
  std::size_t ref;
};

struct ScatterSeries {
  std::vector<int> axes;  // lambda indices
  std::vector<ScatterPoint> points;
};

struct Range {
  double min = 0.0;
  double max = 0.0;
};

struct SplomPanel {
  int row;
  int col;
  int x_index;  // lambda on the panel's x axis (column)
  int y_index;  // lambda on the panel's y axis (row)
  bool diagonal;
  std::vector<std::array<double, 2>> points;  // off-diagonal, in point order
  kde::Histogram histogram;                   // diagonal
};

struct SplomSeries {
  std::vector<int> indices;
  std::vector<Range> ranges;        // shared per lambda across panels
  std::vector<std::string> groups;  // per point
  std::vector<std::size_t> refs;    // per point
  std::vector<SplomPanel> panels;   // row-major
};

enum class MarginalKind { Histogram, Rug };
std::string_view to_string(MarginalKind kind) noexcept;
std::optional<MarginalKind> parse_marginal(std::string_view text) noexcept;

struct ContourLevel {
  double level;
  std::vector<contour::Polyline> lines;
};

struct Marginal {
  MarginalKind kind = MarginalKind::Histogram;
  std::optional<kde::Histogram> x_histogram;
  std::optional<kde::Histogram> y_histogram;
  std::vector<double> x_rug;
  std::vector<double> y_rug;
};

struct DensityGrid {
  std::string group;
  Eigen::VectorXd x_grid;
  Eigen::VectorXd y_grid;
  Eigen::MatrixXd density;  // density(i, j) at (x_grid(i), y_grid(j))
  Eigen::Vector2d bandwidth;
  std::vector<double> contour_levels;
  std::vector<ContourLevel> contours;
  Marginal marginal;
  std::vector<std::array<double, 2>> points;
  std::vector<std::size_t> refs;
};

struct DensitySeries {
  int x;
  int y;
  std::vector<DensityGrid> grids;
  std::vector<std::string> skipped;  // groups with too few points
};

struct ViolinGroup {
  std::string group;
  std::vector<double> positions;
  std::vector<double> densities;
  double bandwidth;
  double q1;
  double median;
  double q3;
  double whisker_low;   // lowest value >= q1 - 1.5 IQR
  double whisker_high;  // highest value <= q3 + 1.5 IQR
  std::vector<double> values;
  std::vector<std::size_t> refs;
};

struct ViolinSeries {
  int y;
  std::vector<ViolinGroup> groups;
  std::vector<std::string> skipped;
};

using Series =
    std::variant<SpiderSeries, ScatterSeries, SplomSeries, DensitySeries, ViolinSeries>;

struct VizPayload {
  VizKind kind;
  Series series;
  std::vector<std::string> axis_labels;
  std::string color_key;            // category used for colour/grouping; empty = none
  std::vector<std::string> groups;  // distinct group values, sorted; colour i = palette[i]
  std::vector<std::string> point_refs;  // point index -> sample id
};

struct DensityConfig {
  int grid_size = 128;
  int contour_levels = 8;
  double low_fraction = 0.05;
  double high_fraction = 0.95;
  double padding_bandwidths = 3.0;
  MarginalKind marginal = MarginalKind::Histogram;
};

struct ViolinConfig {
  int points = 256;
  double padding_bandwidths = 3.0;
};

// Polylines over the canonical elements, values = sample / reference.
VizPayload spider_payload(const Dataset& dataset, const ReferenceStandard& standard,
                          const std::string& color_by = {});

VizPayload scatter_payload(const Dataset& dataset, const DatasetFit& fit, int x = 0, int y = 1,
                           const std::string& color_by = {});

VizPayload scatter3d_payload(const Dataset& dataset, const DatasetFit& fit, int x = 2, int y = 1,
                             int z = 0, const std::string& color_by = {});

VizPayload splom_payload(const Dataset& dataset, const DatasetFit& fit,
                         const std::vector<int>& indices = {0, 1, 2},
                         const std::string& color_by = {});

// One KDE grid per colour group with >= 3 points; smaller groups are listed in
// `skipped`.
VizPayload density_contour_payload(const Dataset& dataset, const DatasetFit& fit, int x = 0,
                                   int y = 1, const std::string& color_by = {},
                                   const DensityConfig& config = {});

// One violin per group with >= 2 points.
VizPayload violin_payload(const Dataset& dataset, const DatasetFit& fit, int y = 1,
                          const std::string& group_by = {}, const ViolinConfig& config = {});

// Density of one group's points; exposed for direct testing.
DensityGrid density_grid(const Eigen::Ref<const Eigen::VectorXd>& x,
                         const Eigen::Ref<const Eigen::VectorXd>& y,
                         const DensityConfig& config = {});

ViolinGroup violin_group(const std::vector<double>& values, const ViolinConfig& config = {});

}  // namespace reekit::viz
