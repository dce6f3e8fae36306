#pragma once

#include <Eigen/Core>

#include <string>

#include "reekit/domain.hpp"
#include "reekit/error.hpp"

namespace reekit {

inline constexpr int kMinDegreeCount = 1;
inline constexpr int kMaxDegreeCount = 6;
inline constexpr int kDefaultDegreeCount = 4;

// Monic polynomials f_0..f_{k-1} in the raw radius r (pm), orthogonal under the
// unweighted discrete inner product over a fixed grid. Stored as the
// three-term recurrence
//
//   f_0 = 1,  f_1 = (r - a_0),  f_{j+1} = (r - a_j) f_j - b_j f_{j-1}
//
// which evaluates stably at r ~ 100 pm where expanded monomial coefficients
// would cancel badly.
template <typename Scalar>
class BasicOrthogonalBasis {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  BasicOrthogonalBasis(Vector grid, Vector alpha, Vector beta, Vector gram_norms)
      : grid_(std::move(grid)),
        alpha_(std::move(alpha)),
        beta_(std::move(beta)),
        gram_norms_(std::move(gram_norms)) {}

  int degree_count() const noexcept { return static_cast<int>(gram_norms_.size()); }
  const Vector& grid() const noexcept { return grid_; }
  const Vector& alpha() const noexcept { return alpha_; }
  const Vector& beta() const noexcept { return beta_; }
  // <f_j, f_j> over the grid.
  const Vector& gram_norms() const noexcept { return gram_norms_; }

  // f_0(r) .. f_{k-1}(r).
  Vector evaluate(Scalar r) const {
    const int k = degree_count();
    Vector f(k);
    f(0) = Scalar(1);
    if (k > 1) f(1) = r - alpha_(0);
    for (int j = 1; j + 1 < k; ++j) f(j + 1) = (r - alpha_(j)) * f(j) - beta_(j) * f(j - 1);
    return f;
  }

  // D(i, j) = f_j(r_i).
  template <typename Derived>
  Matrix design_matrix(const Eigen::MatrixBase<Derived>& radii) const {
    Matrix design(radii.size(), degree_count());
    for (Eigen::Index i = 0; i < radii.size(); ++i) {
      design.row(i) = evaluate(static_cast<Scalar>(radii(i))).transpose();
    }
    return design;
  }

  // Values of every basis function on the full grid (grid size x k).
  Matrix grid_values() const { return design_matrix(grid_); }

  // Row j holds the ascending-power coefficients of f_j in r; the entry at
  // column j is 1.
  Matrix monomial_coefficients() const {
    const int k = degree_count();
    Matrix c = Matrix::Zero(k, k);
    c(0, 0) = Scalar(1);
    if (k > 1) {
      c(1, 0) = -alpha_(0);
      c(1, 1) = Scalar(1);
    }
    for (int j = 1; j + 1 < k; ++j) {
      for (int p = 0; p <= j; ++p) {
        c(j + 1, p + 1) += c(j, p);
        c(j + 1, p) -= alpha_(j) * c(j, p);
      }
      for (int p = 0; p < j; ++p) c(j + 1, p) -= beta_(j) * c(j - 1, p);
    }
    return c;
  }

 private:
  Vector grid_;
  Vector alpha_;
  Vector beta_;
  Vector gram_norms_;
};

using OrthogonalBasis = BasicOrthogonalBasis<double>;

// Sequential (Stieltjes) orthogonalisation over `grid`. Each new polynomial is
// r * f_j with its projections on f_j and f_{j-1} removed; the projections on
// lower members vanish identically for this recurrence.
template <typename Scalar, typename Derived>
BasicOrthogonalBasis<Scalar> build_basis(const Eigen::MatrixBase<Derived>& grid_in,
                                         int degree_count) {
  using Vector = typename BasicOrthogonalBasis<Scalar>::Vector;
  if (degree_count < kMinDegreeCount || degree_count > kMaxDegreeCount) {
    throw Error(ErrorCode::DegreeOutOfRange,
                "degree must be between " + std::to_string(kMinDegreeCount) + " and " +
                    std::to_string(kMaxDegreeCount) + " (got " + std::to_string(degree_count) +
                    ")");
  }
  const Vector grid = grid_in.template cast<Scalar>();
  if (grid.size() <= degree_count) {
    throw Error(ErrorCode::DegreeOutOfRange, "grid too small for requested degree");
  }

  Vector alpha = Vector::Zero(degree_count);
  Vector beta = Vector::Zero(degree_count);
  Vector norms(degree_count);

  Vector previous = Vector::Zero(grid.size());
  Vector current = Vector::Ones(grid.size());
  norms(0) = current.squaredNorm();
  for (int j = 0; j < degree_count; ++j) {
    alpha(j) = grid.cwiseProduct(current).dot(current) / norms(j);
    if (j + 1 == degree_count) break;
    if (j > 0) beta(j) = norms(j) / norms(j - 1);
    Vector next = (grid.array() - alpha(j)).matrix().cwiseProduct(current) - beta(j) * previous;
    previous = std::move(current);
    current = std::move(next);
    norms(j + 1) = current.squaredNorm();
  }
  return BasicOrthogonalBasis<Scalar>(grid, std::move(alpha), std::move(beta), std::move(norms));
}

// Basis over the canonical radii of `radii`.
OrthogonalBasis build_basis(const RadiiTable& radii, int degree_count = kDefaultDegreeCount);

// Content hash of the recurrence and grid; equal for equal bases.
std::string basis_id(const OrthogonalBasis& basis);

}  // namespace reekit
