#pragma once

#include <Eigen/Core>
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "reekit/domain.hpp"
#include "reekit/lambda.hpp"

// Checks that `expr` throws reekit::Error carrying `expected`.
#define CHECK_THROWS_CODE(expr, expected)                                  \
  do {                                                                     \
    bool thrown_ = false;                                                  \
    try {                                                                  \
      (void)(expr);                                                        \
    } catch (const reekit::Error& error_) {                                \
      thrown_ = true;                                                      \
      CHECK_MESSAGE(error_.code() == (expected), std::string(reekit::to_string(error_.code()))); \
    }                                                                      \
    CHECK_MESSAGE(thrown_, "expected " << std::string(reekit::to_string(expected)));\
  } while (false)

namespace testing_support {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(REEKIT_FIXTURE_DIR) / name;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Uniform draw inside the sandbox slider bounds.
inline Eigen::VectorXd random_lambdas(std::mt19937_64& rng, int degree_count = 4) {
  static constexpr double bounds[] = {15.0, 1.0, 0.1, 0.01, 0.001, 0.0001};
  Eigen::VectorXd l(degree_count);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int j = 0; j < degree_count; ++j) l(j) = u(rng) * bounds[j];
  // lambda0 lives in [-5, 15].
  l(0) = 5.0 + 10.0 * u(rng);
  return l;
}

// Pattern whose normalised values lie exactly on the basis expansion of `lambdas`.
inline reekit::ReePattern pattern_from_lambdas(const std::string& id, const Eigen::VectorXd& lambdas,
                                               const reekit::ReferenceStandard& standard =
                                                   reekit::builtin_reference("chondrite")) {
  const auto basis = reekit::build_basis(reekit::canonical_radii(), static_cast<int>(lambdas.size()));
  reekit::ElementSet all(reekit::kCanonicalElements.begin(), reekit::kCanonicalElements.end());
  reekit::ReePattern p;
  p.sample_id = id;
  for (const auto& [e, point] : reekit::reconstruct(lambdas, basis, all, standard)) {
    p.concentrations_ppm[e] = point.concentration_ppm;
  }
  return p;
}

inline reekit::ReePattern flat_pattern(const std::string& id, double factor,
                                       const reekit::ReferenceStandard& standard =
                                           reekit::builtin_reference("chondrite")) {
  reekit::ReePattern p;
  p.sample_id = id;
  for (auto e : reekit::kCanonicalElements) p.concentrations_ppm[e] = factor * standard.value(e);
  return p;
}

}  // namespace testing_support
