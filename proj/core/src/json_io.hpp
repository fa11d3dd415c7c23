#pragma once

// JSON mappings shared by the journal and campaign config readers.

#include <nlohmann/json.hpp>

#include "cadse/bd_metrics.hpp"
#include "cadse/cost.hpp"
#include "cadse/evaluation.hpp"
#include "cadse/external.hpp"
#include "cadse/measurement.hpp"
#include "cadse/surrogate.hpp"

namespace cadse::json_io {

using Json = nlohmann::ordered_json;

Json to_json(const RdeCurve& curve);
RdeCurve curve_from_json(const Json& j);
Json to_json(const std::vector<RdeCurve>& curves);
std::vector<RdeCurve> curves_from_json(const Json& j);

Json to_json(const CostSpec& spec);
CostSpec cost_from_json(const Json& j);

Json to_json(const MeasurementPolicy& policy);
MeasurementPolicy policy_from_json(const Json& j);

Json to_json(const SurrogateOptions& options);
SurrogateOptions surrogate_options_from_json(const Json& j);

Json to_json(const SurrogateModel& model);
SurrogateModel surrogate_from_json(const Json& j);

Json to_json(const ExternalConfig& config);
ExternalConfig external_from_json(const Json& j);

Json to_json(const Measurement& m);
Measurement measurement_from_json(const Json& j);

}  // namespace cadse::json_io
