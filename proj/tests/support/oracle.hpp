#pragma once

// Reference computations that share no code with the library: plain arrays,
// long double, textbook algorithms.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

using Real = long double;
using Column = std::vector<Real>;

// Shannon (1976) eightfold radii, La..Lu, typed in from the table.
inline constexpr std::array<double, 14> kRadii = {116.0, 114.3, 112.6, 110.9, 107.9,
                                                  106.6, 105.3, 104.0, 102.7, 101.5,
                                                  100.4, 99.4,  98.5,  97.7};

inline Real dot(const Column& a, const Column& b) {
  Real s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Monic orthogonal polynomials over `grid` by modified Gram-Schmidt on the
// monomials (r - c)^j, c = grid mean, with one reorthogonalisation pass.
// Returns the values of each polynomial at `at` (one column per degree).
// Monic in r because (r - c)^j is monic and only lower-degree terms are removed.
inline std::vector<Column> gram_schmidt_values(const std::vector<double>& grid, int k,
                                               const std::vector<double>& at) {
  Real c = 0;
  for (double r : grid) c += r;
  c /= static_cast<Real>(grid.size());
  // Stack grid and evaluation points so the same linear combination applies.
  const std::size_t n = grid.size();
  std::vector<Real> xs;
  for (double r : grid) xs.push_back(static_cast<Real>(r) - c);
  for (double r : at) xs.push_back(static_cast<Real>(r) - c);

  std::vector<Column> q;  // full stacked vectors
  const auto grid_part = [n](const Column& v) { return Column(v.begin(), v.begin() + n); };
  for (int j = 0; j < k; ++j) {
    Column v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v[i] = std::pow(xs[i], j);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : q) {
        const Column gu = grid_part(u);
        const Real coeff = dot(grid_part(v), gu) / dot(gu, gu);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= coeff * u[i];
      }
    }
    q.push_back(v);
  }
  std::vector<Column> out;
  for (const auto& v : q) out.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(n), v.end());
  return out;
}

// Gaussian elimination with partial pivoting; a is row-major n x n.
inline Column solve(std::vector<Column> a, Column b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0) throw std::runtime_error("singular normal equations");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Real f = a[r][col] / a[col][col];
      for (std::size_t c2 = col; c2 < n; ++c2) a[r][c2] -= f * a[col][c2];
      b[r] -= f * b[col];
    }
  }
  Column x(n);
  for (std::size_t i = n; i-- > 0;) {
    Real s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

// Brute-force weighted normal equations (G^T W G) x = G^T W y, where G holds
// the Gram-Schmidt basis evaluated at the observed radii.
inline std::vector<double> normal_equations_fit(const std::vector<double>& radii,
                                                const std::vector<double>& y,
                                                const std::vector<double>& w, int k) {
  const std::vector<double> grid(kRadii.begin(), kRadii.end());
  const auto g = gram_schmidt_values(grid, k, radii);
  std::vector<Column> a(static_cast<std::size_t>(k), Column(static_cast<std::size_t>(k), 0));
  Column b(static_cast<std::size_t>(k), 0);
  for (int p = 0; p < k; ++p) {
    for (std::size_t i = 0; i < radii.size(); ++i) {
      b[p] += w[i] * g[p][i] * y[i];
      for (int q = 0; q < k; ++q) a[p][q] += w[i] * g[p][i] * g[q][i];
    }
  }
  const auto x = solve(a, b);
  return std::vector<double>(x.begin(), x.end());
}

// Metal-to-sesquioxide mass ratio from standard atomic weights (IUPAC).
inline double sesquioxide_factor(double metal_mass) {
  const double oxygen = 15.999;
  return (2.0 * metal_mass + 3.0 * oxygen) / (2.0 * metal_mass);
}

// Quantile by sorting and interpolating between order statistics.
inline double sorted_quantile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double h = static_cast<double>(v.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

// Direct product-Gaussian KDE at one point.
inline double kde2(const std::vector<double>& xs, const std::vector<double>& ys, double hx,
                   double hy, double px, double py) {
  const Real pi = 3.14159265358979323846264338327950288L;
  Real s = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Real u = (px - xs[i]) / hx;
    const Real v = (py - ys[i]) / hy;
    s += std::exp(-0.5L * (u * u + v * v));
  }
  return static_cast<double>(s / (2 * pi * hx * hy * static_cast<Real>(xs.size())));
}

}  // namespace oracle
