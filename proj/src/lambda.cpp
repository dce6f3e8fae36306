#include "reekit/lambda.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <thread>

#include "reekit/csv.hpp"
#include "reekit/hash.hpp"

namespace reekit {

OrthogonalBasis build_basis(const RadiiTable& radii, int degree_count) {
  return build_basis<double>(radii.as_vector(), degree_count);
}

std::string basis_id(const OrthogonalBasis& basis) {
  std::string text = fmt::format("k={};", basis.degree_count());
  for (Eigen::Index i = 0; i < basis.grid().size(); ++i) text += csv::format_number(basis.grid()(i)) + ",";
  text += ";";
  for (Eigen::Index i = 0; i < basis.alpha().size(); ++i) {
    text += csv::format_number(basis.alpha()(i)) + "," + csv::format_number(basis.beta()(i)) + ";";
  }
  return sha256_hex(text).substr(0, 16);
}

LambdaSet fit_lambdas(const NormalizedPattern& pattern, const OrthogonalBasis& basis,
                      const std::map<Element, double>* weights) {
  const int k = basis.degree_count();
  const auto n = static_cast<Eigen::Index>(pattern.points.size());
  if (n < k + 1) {
    throw Error(ErrorCode::TooFewPoints,
                fmt::format("sample '{}': {} points cannot constrain {} lambdas (need {})",
                            pattern.sample_id, n, k, k + 1));
  }

  Eigen::VectorXd radii(n), y(n), w = Eigen::VectorXd::Ones(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = pattern.points[static_cast<std::size_t>(i)];
    radii(i) = p.radius_pm;
    y(i) = p.y;
    if (weights) {
      const auto it = weights->find(p.element);
      if (it == weights->end() || !(it->second > 0.0) || !std::isfinite(it->second)) {
        throw Error(ErrorCode::InvalidWeight,
                    fmt::format("sample '{}': no positive weight for {}", pattern.sample_id,
                                symbol(p.element)));
      }
      w(i) = it->second;
    }
  }

  const Eigen::MatrixXd design = basis.design_matrix(radii);
  LambdaSet out;
  out.sample_id = pattern.sample_id;
  out.lambdas = solve_weighted_least_squares(design, y, w).coefficients;
  out.excluded = pattern.mask;
  out.basis_id = basis_id(basis);

  const Eigen::VectorXd residual = y - design * out.lambdas;
  for (Eigen::Index i = 0; i < n; ++i) {
    out.residuals.emplace(pattern.points[static_cast<std::size_t>(i)].element, residual(i));
  }
  out.rms_misfit = std::sqrt(w.dot(residual.cwiseAbs2()) / w.sum());
  return out;
}

std::map<Element, ReconstructedPoint> reconstruct(const Eigen::VectorXd& lambdas,
                                                  const OrthogonalBasis& basis,
                                                  const ElementSet& elements,
                                                  const ReferenceStandard& standard) {
  if (lambdas.size() != basis.degree_count()) {
    throw Error(ErrorCode::InvalidRequest,
                fmt::format("expected {} lambdas, got {}", basis.degree_count(), lambdas.size()));
  }
  std::map<Element, ReconstructedPoint> out;
  for (Element e : elements) {
    if (!is_canonical(e)) continue;
    const double y = basis.evaluate(basis.grid()(static_cast<Eigen::Index>(index_of(e)))).dot(lambdas);
    out.emplace(e, ReconstructedPoint{y, standard.value(e) * std::exp(y)});
  }
  return out;
}

AnomalyReport anomaly_factors(const ReePattern& pattern, const ReferenceStandard& standard,
                              const RadiiTable& radii, const OrthogonalBasis& basis,
                              const ElementSet& exclusions, NonPositivePolicy policy) {
  ElementSet left_out = exclusions;
  left_out.insert(kAnomalyCandidates.begin(), kAnomalyCandidates.end());

  NormalizedPattern smooth;
  try {
    smooth = normalize(pattern, standard, radii, left_out, policy);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooFewElements) throw;
    throw Error(ErrorCode::TooFewPoints,
                fmt::format("sample '{}': too few elements besides Ce and Eu for an anomaly fit",
                            pattern.sample_id));
  }
  const LambdaSet fit = fit_lambdas(smooth, basis);

  AnomalyReport report;
  report.sample_id = pattern.sample_id;
  report.basis_id = fit.basis_id;
  for (Element e : kAnomalyCandidates) {
    const auto c = pattern.concentration(e);
    if (!c || !(*c > 0.0)) continue;
    const double predicted = reconstruct(fit.lambdas, basis, {e}, standard).at(e).concentration_ppm;
    report.factors.emplace(e, *c / predicted);
  }
  return report;
}

std::string_view to_string(WeightsPolicy policy) noexcept {
  return policy == WeightsPolicy::Uniform ? "uniform" : "inverse-variance";
}

std::optional<WeightsPolicy> parse_weights_policy(std::string_view text) noexcept {
  if (text == "uniform") return WeightsPolicy::Uniform;
  if (text == "inverse-variance") return WeightsPolicy::InverseVariance;
  return std::nullopt;
}

std::string FitConfig::cache_key() const {
  std::string values;
  for (const auto& [e, v] : standard.values_ppm()) values += csv::format_number(v) + ",";
  return fmt::format("standard={}:{};exclude={};degree={};weights={};nonpositive={}",
                     standard.name(), sha256_hex(values).substr(0, 16),
                     format_elements(exclusions), degree_count, to_string(weights),
                     to_string(nonpositive));
}

std::map<Element, double> inverse_variance_weights(const ReePattern& pattern,
                                                   const NormalizedPattern& normalized) {
  std::map<Element, double> weights;
  for (const auto& p : normalized.points) {
    const auto sd = pattern.uncertainties_ppm.find(p.element);
    const auto c = pattern.concentration(p.element);
    if (sd == pattern.uncertainties_ppm.end() || !(sd->second > 0.0) || !c) {
      throw Error(ErrorCode::InvalidWeight,
                  fmt::format("sample '{}': no positive uncertainty for {}", pattern.sample_id,
                              symbol(p.element)));
    }
    const double sigma_y = sd->second / *c;
    weights.emplace(p.element, 1.0 / (sigma_y * sigma_y));
  }
  return weights;
}

std::pair<LambdaSet, AnomalyReport> fit_pattern(const ReePattern& pattern, const FitConfig& config,
                                                const OrthogonalBasis& basis) {
  const RadiiTable& radii = canonical_radii();
  const NormalizedPattern normalized =
      normalize(pattern, config.standard, radii, config.exclusions, config.nonpositive);
  std::map<Element, double> weights;
  if (config.weights == WeightsPolicy::InverseVariance) {
    weights = inverse_variance_weights(pattern, normalized);
  }
  LambdaSet lambdas = fit_lambdas(
      normalized, basis, config.weights == WeightsPolicy::InverseVariance ? &weights : nullptr);

  AnomalyReport anomalies{pattern.sample_id, {}, lambdas.basis_id};
  try {
    anomalies = anomaly_factors(pattern, config.standard, radii, basis, config.exclusions,
                                config.nonpositive);
  } catch (const Error& e) {
    // The lambdas stand on their own; an anomaly fit can still be impossible.
    if (e.code() != ErrorCode::TooFewPoints && e.code() != ErrorCode::RankDeficient) throw;
  }
  return {std::move(lambdas), std::move(anomalies)};
}

namespace {

struct Outcome {
  std::optional<std::pair<LambdaSet, AnomalyReport>> result;
  std::optional<SampleError> error;
};

Outcome fit_one(const ReePattern& pattern, const FitConfig& config, const OrthogonalBasis& basis) {
  try {
    return {fit_pattern(pattern, config, basis), std::nullopt};
  } catch (const Error& e) {
    return {std::nullopt, SampleError{pattern.sample_id, e.code(), e.what()}};
  }
}

constexpr std::size_t kParallelThreshold = 512;

}  // namespace

DatasetFit fit_dataset(const Dataset& dataset, const FitConfig& config) {
  if (dataset.patterns.empty()) throw Error(ErrorCode::EmptyDataset, "dataset has no patterns");
  const OrthogonalBasis basis = build_basis(canonical_radii(), config.degree_count);

  const std::size_t n = dataset.patterns.size();
  std::vector<Outcome> outcomes(n);
  const std::size_t threads =
      n < kParallelThreshold ? 1 : std::max(2u, std::thread::hardware_concurrency());
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) outcomes[i] = fit_one(dataset.patterns[i], config, basis);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t i = t * chunk; i < std::min(n, (t + 1) * chunk); ++i) {
          outcomes[i] = fit_one(dataset.patterns[i], config, basis);
        }
      });
    }
  }

  DatasetFit fit;
  fit.degree_count = config.degree_count;
  for (auto& o : outcomes) {
    if (o.result) {
      fit.lambdas.push_back(std::move(o.result->first));
      fit.anomalies.push_back(std::move(o.result->second));
    } else {
      fit.errors.push_back(std::move(*o.error));
    }
  }
  return fit;
}

std::string lambda_csv(const DatasetFit& fit) {
  csv::Record header{"sample"};
  for (int j = 0; j < fit.degree_count; ++j) header.push_back(fmt::format("lambda{}", j));
  for (const char* c : {"rms_misfit", "ce_anomaly", "eu_anomaly", "excluded"}) header.emplace_back(c);

  std::string out = csv::join_record(header) + "\n";
  for (std::size_t i = 0; i < fit.lambdas.size(); ++i) {
    const auto& l = fit.lambdas[i];
    csv::Record row{l.sample_id};
    for (Eigen::Index j = 0; j < l.lambdas.size(); ++j) row.push_back(csv::format_number(l.lambdas(j)));
    row.push_back(csv::format_number(l.rms_misfit));
    const auto& factors = fit.anomalies[i].factors;
    for (Element e : kAnomalyCandidates) {
      const auto it = factors.find(e);
      row.push_back(it == factors.end() ? "" : csv::format_number(it->second));
    }
    row.push_back(format_elements(l.excluded));
    out += csv::join_record(row) + "\n";
  }
  return out;
}

}  // namespace reekit
