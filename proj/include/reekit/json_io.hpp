#pragma once

#include <nlohmann/json.hpp>

#include "reekit/domain.hpp"
#include "reekit/error.hpp"
#include "reekit/ingestion.hpp"
#include "reekit/lambda.hpp"
#include "reekit/metrics.hpp"
#include "reekit/store.hpp"
#include "reekit/viz.hpp"

// JSON forms of the service wire types. Object keys serialise sorted, so equal
// values always produce equal bytes.
namespace reekit::json_io {

using nlohmann::json;

inline constexpr std::string_view kVizSchema = "reekit.viz/v1";
inline constexpr std::string_view kLambdaSchema = "reekit.lambdas/v1";

json error_body(ErrorCode code, std::string_view message,
                const std::vector<std::string>& detail = {});
json to_json(const ImportReport& report);
json to_json(const DatasetSummary& summary);
json to_json(const ReePattern& pattern);
json to_json(const LambdaSet& lambdas);
json to_json(const AnomalyReport& report);
json to_json(const SampleError& error);
json to_json(const MetricReport& report);
json to_json(const DatasetFit& fit, const FitConfig& config);
json to_json(const viz::VizPayload& payload);

// Element-keyed objects such as {"La": 12.5, "Ce": 30.1}. Throws
// Error(InvalidRequest) on unknown symbols or non-numeric values.
std::map<Element, double> element_map(const json& object);

}  // namespace reekit::json_io
