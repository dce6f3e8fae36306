#pragma once

#include <Eigen/Core>
#include <Eigen/SVD>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reekit/basis.hpp"
#include "reekit/domain.hpp"
#include "reekit/error.hpp"
#include "reekit/normalization.hpp"

namespace reekit {

// Smallest / largest singular value of the (weighted) design matrix below
// which a fit is refused.
inline constexpr double kRankTolerance = 1e-10;

template <typename Scalar>
struct LeastSquaresSolution {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> coefficients;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> singular_values;
};

// argmin_x sum_i w_i (y_i - (A x)_i)^2 through an SVD of sqrt(W) A.
// Throws RankDeficient when sigma_min < tolerance * sigma_max.
template <typename DerivedA, typename DerivedY, typename DerivedW>
LeastSquaresSolution<typename DerivedA::Scalar> solve_weighted_least_squares(
    const Eigen::MatrixBase<DerivedA>& design, const Eigen::MatrixBase<DerivedY>& y,
    const Eigen::MatrixBase<DerivedW>& weights,
    typename DerivedA::Scalar tolerance = typename DerivedA::Scalar(kRankTolerance)) {
  using Scalar = typename DerivedA::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  const Vector root_w = weights.template cast<Scalar>().cwiseSqrt();
  const Matrix weighted = root_w.asDiagonal() * design;
  const Vector rhs = root_w.cwiseProduct(y.template cast<Scalar>());

  Eigen::JacobiSVD<Matrix> svd(weighted, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || !(s(s.size() - 1) >= tolerance * s(0))) {
    throw Error(ErrorCode::RankDeficient, "design matrix is rank deficient for this degree");
  }
  return {svd.solve(rhs), s};
}

struct LambdaSet {
  std::string sample_id;
  Eigen::VectorXd lambdas;             // natural-log units
  std::map<Element, double> residuals;  // y_observed - y_fitted
  double rms_misfit = 0.0;
  ElementSet excluded;  // canonical elements that did not enter the fit
  std::string basis_id;
};

// Weighted least-squares lambdas. `weights` defaults to uniform; any weight
// must be finite and > 0 (InvalidWeight). Needs at least degree_count + 1
// points (TooFewPoints).
LambdaSet fit_lambdas(const NormalizedPattern& pattern, const OrthogonalBasis& basis,
                      const std::map<Element, double>* weights = nullptr);

struct ReconstructedPoint {
  double y;
  double concentration_ppm;
};

// Forward model y(r_e) = sum_j lambda_j f_j(r_e) for every canonical element of
// `elements`.
std::map<Element, ReconstructedPoint> reconstruct(const Eigen::VectorXd& lambdas,
                                                  const OrthogonalBasis& basis,
                                                  const ElementSet& elements,
                                                  const ReferenceStandard& standard);

inline const ElementSet kAnomalyCandidates{Element::Ce, Element::Eu};

struct AnomalyReport {
  std::string sample_id;
  std::map<Element, double> factors;  // Ce and/or Eu: measured / predicted
  std::string basis_id;
};

// For each of Ce and Eu present with a positive value: the ratio of the
// measured concentration to the one predicted by a fit that leaves out both
// candidates (and `exclusions`). Throws TooFewPoints when that fit is not
// possible.
AnomalyReport anomaly_factors(const ReePattern& pattern, const ReferenceStandard& standard,
                              const RadiiTable& radii, const OrthogonalBasis& basis,
                              const ElementSet& exclusions = {},
                              NonPositivePolicy policy = NonPositivePolicy::Reject);

enum class WeightsPolicy { Uniform, InverseVariance };

std::string_view to_string(WeightsPolicy policy) noexcept;
std::optional<WeightsPolicy> parse_weights_policy(std::string_view text) noexcept;

struct FitConfig {
  ReferenceStandard standard = builtin_reference("chondrite");
  ElementSet exclusions;
  int degree_count = kDefaultDegreeCount;
  WeightsPolicy weights = WeightsPolicy::Uniform;
  NonPositivePolicy nonpositive = NonPositivePolicy::Reject;

  // Stable text key for caching; covers every field.
  std::string cache_key() const;
};

struct SampleError {
  std::string sample_id;
  ErrorCode code;
  std::string message;
};

struct DatasetFit {
  std::vector<LambdaSet> lambdas;        // fitted samples, input order
  std::vector<AnomalyReport> anomalies;  // parallel to `lambdas`
  std::vector<SampleError> errors;       // input order
  int degree_count = kDefaultDegreeCount;
};

// Per-pattern weights derived from uncertainties (1 / sigma_y^2 with
// sigma_y = sigma_c / c). Throws InvalidWeight if an included element lacks a
// positive uncertainty.
std::map<Element, double> inverse_variance_weights(const ReePattern& pattern,
                                                   const NormalizedPattern& normalized);

// Fits one pattern under `config` the way fit_dataset does.
std::pair<LambdaSet, AnomalyReport> fit_pattern(const ReePattern& pattern, const FitConfig& config,
                                                const OrthogonalBasis& basis);

// One result or one named error per pattern; only an empty dataset throws.
// Large batches are split across threads; output order follows input order.
DatasetFit fit_dataset(const Dataset& dataset, const FitConfig& config);

// CSV with columns sample,lambda0..lambda{k-1},rms_misfit,ce_anomaly,eu_anomaly,excluded.
std::string lambda_csv(const DatasetFit& fit);

}  // namespace reekit
