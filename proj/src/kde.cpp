#include "reekit/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace reekit::kde {

namespace {

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_sd(const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (v.size() < 2) return 0.0;
  const double m = v.mean();
  return std::sqrt((v.array() - m).square().sum() / static_cast<double>(v.size() - 1));
}

// exp(-u^2/2) / (sqrt(2 pi) h) for u = (at_i - sample_j) / h.
Eigen::MatrixXd kernel_matrix(const Eigen::Ref<const Eigen::VectorXd>& at,
                              const Eigen::Ref<const Eigen::VectorXd>& samples, double h) {
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * h);
  Eigen::MatrixXd u = at.replicate(1, samples.size()) - samples.transpose().replicate(at.size(), 1);
  return norm * (-0.5 * (u / h).array().square()).exp().matrix();
}

}  // namespace

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

Quartiles quartiles(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return {quantile_sorted(values, 0.25), quantile_sorted(values, 0.5), quantile_sorted(values, 0.75)};
}

double degenerate_bandwidth(double location) noexcept {
  return 1e-3 * std::max(1.0, std::abs(location));
}

double silverman_bandwidth(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("bandwidth of empty sample");
  const Eigen::Map<const Eigen::VectorXd> v(values.data(), static_cast<Eigen::Index>(values.size()));
  const double sd = sample_sd(v);
  const Quartiles q = quartiles(values);
  const double iqr_scale = (q.q3 - q.q1) / 1.34;
  double spread = std::min(sd, iqr_scale);
  if (!(spread > 0.0)) spread = std::max(sd, iqr_scale);
  if (!(spread > 0.0)) return degenerate_bandwidth(mean(values));
  return 0.9 * spread * std::pow(static_cast<double>(values.size()), -0.2);
}

Eigen::Vector2d silverman_bandwidth_2d(const Eigen::Ref<const Eigen::VectorXd>& x,
                                       const Eigen::Ref<const Eigen::VectorXd>& y) {
  const double factor = std::pow(static_cast<double>(x.size()), -1.0 / 6.0);
  Eigen::Vector2d h(sample_sd(x) * factor, sample_sd(y) * factor);
  if (!(h(0) > 0.0)) h(0) = degenerate_bandwidth(x.mean());
  if (!(h(1) > 0.0)) h(1) = degenerate_bandwidth(y.mean());
  return h;
}

Eigen::VectorXd density_1d(const Eigen::Ref<const Eigen::VectorXd>& samples, double bandwidth,
                           const Eigen::Ref<const Eigen::VectorXd>& at) {
  return kernel_matrix(at, samples, bandwidth).rowwise().mean();
}

Eigen::MatrixXd density_2d(const Eigen::Ref<const Eigen::VectorXd>& x,
                           const Eigen::Ref<const Eigen::VectorXd>& y,
                           const Eigen::Vector2d& bandwidth,
                           const Eigen::Ref<const Eigen::VectorXd>& x_grid,
                           const Eigen::Ref<const Eigen::VectorXd>& y_grid) {
  const Eigen::MatrixXd kx = kernel_matrix(x_grid, x, bandwidth(0));
  const Eigen::MatrixXd ky = kernel_matrix(y_grid, y, bandwidth(1));
  return (kx * ky.transpose()) / static_cast<double>(x.size());
}

double density_2d_at(const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& y,
                     const Eigen::Vector2d& bandwidth, double px, double py) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double u = (px - x(i)) / bandwidth(0);
    const double v = (py - y(i)) / bandwidth(1);
    sum += std::exp(-0.5 * (u * u + v * v));
  }
  return sum / (2.0 * std::numbers::pi * bandwidth(0) * bandwidth(1) * static_cast<double>(x.size()));
}

Histogram histogram(const std::vector<double>& values) {
  Histogram h;
  if (values.empty()) return h;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it;
  double hi = *hi_it;
  std::size_t bins = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(values.size())))) + 1;
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
    bins = 1;
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b <= bins; ++b) h.edges.push_back(b == bins ? hi : lo + width * static_cast<double>(b));
  h.counts.assign(bins, 0);
  for (double v : values) {
    auto b = static_cast<std::size_t>(std::floor((v - lo) / width));
    h.counts[std::min(b, bins - 1)]++;
  }
  return h;
}

}  // namespace reekit::kde
