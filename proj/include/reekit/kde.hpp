#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace reekit::kde {

// Sample quantile by linear interpolation between order statistics:
// h = (n - 1) p, q = x[floor h] + (h - floor h) (x[floor h + 1] - x[floor h]).
// `sorted` must be ascending and non-empty.
double quantile_sorted(const std::vector<double>& sorted, double p);

struct Quartiles {
  double q1;
  double median;
  double q3;
};

Quartiles quartiles(std::vector<double> values);

// Bandwidth used when a sample has no spread.
double degenerate_bandwidth(double location) noexcept;

// Silverman's rule of thumb, 0.9 min(sd, IQR / 1.34) n^(-1/5); falls back to
// whichever spread is non-zero, then to degenerate_bandwidth.
double silverman_bandwidth(const std::vector<double>& values);

// Silverman's rule for a 2-D product Gaussian kernel: sd_d n^(-1/6) per axis.
Eigen::Vector2d silverman_bandwidth_2d(const Eigen::Ref<const Eigen::VectorXd>& x,
                                       const Eigen::Ref<const Eigen::VectorXd>& y);

// Gaussian kernel density of `samples` at each of `at`.
Eigen::VectorXd density_1d(const Eigen::Ref<const Eigen::VectorXd>& samples, double bandwidth,
                           const Eigen::Ref<const Eigen::VectorXd>& at);

// Product-Gaussian density on the tensor grid; result(i, j) is the density at
// (x_grid(i), y_grid(j)).
Eigen::MatrixXd density_2d(const Eigen::Ref<const Eigen::VectorXd>& x,
                           const Eigen::Ref<const Eigen::VectorXd>& y,
                           const Eigen::Vector2d& bandwidth,
                           const Eigen::Ref<const Eigen::VectorXd>& x_grid,
                           const Eigen::Ref<const Eigen::VectorXd>& y_grid);

// Density at a single point (direct evaluation).
double density_2d_at(const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& y,
                     const Eigen::Vector2d& bandwidth, double px, double py);

struct Histogram {
  std::vector<double> edges;  // counts.size() + 1
  std::vector<std::size_t> counts;
};

// Sturges' rule, ceil(log2 n) + 1 equal bins over [min, max]; the last bin is
// closed. A zero-width sample gets a single unit-wide bin.
Histogram histogram(const std::vector<double>& values);

}  // namespace reekit::kde
