#pragma once

#include <Eigen/Core>

#include <vector>

namespace reekit::contour {

struct Polyline {
  std::vector<Eigen::Vector2d> points;
  bool closed = false;
};

// Iso-lines of `values` (values(i, j) sampled at (x(i), y(j))) at `level`
// by marching squares with linear edge interpolation. Saddle cells are split
// by the cell-centre average. Segments are chained into polylines; a line
// that returns to its start is closed, one that runs into the grid border is
// open.
std::vector<Polyline> isolines(const Eigen::Ref<const Eigen::MatrixXd>& values,
                               const Eigen::Ref<const Eigen::VectorXd>& x,
                               const Eigen::Ref<const Eigen::VectorXd>& y, double level);

// Number of 4-connected grid regions with values >= level.
int count_superlevel_regions(const Eigen::Ref<const Eigen::MatrixXd>& values, double level);

}  // namespace reekit::contour
