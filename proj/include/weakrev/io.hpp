#pragma once

#include <json.hpp>

#include <string>

#include "weakrev/measurement.hpp"
#include "weakrev/tradeoff.hpp"

namespace weakrev::io {

using json = nlohmann::json;

/// {"dimension": d, "operators": [N matrices of d rows of d [re, im] pairs]}
json to_json(const MeasurementSet& set);

/// Parses and validates a measurement-set document. Throws ParseError for
/// malformed documents and DimensionError / CompletenessError from validation.
MeasurementSet measurement_set_from_json(const json& doc,
                                         double completeness_tol = MeasurementSet::kDefaultCompletenessTol);

MeasurementSet read_measurement_set(const std::string& path,
                                    double completeness_tol = MeasurementSet::kDefaultCompletenessTol);
void write_measurement_set(const MeasurementSet& set, const std::string& path);

json to_json(const TradeoffReport& report);
json to_json(const ScanAggregate& aggregate);

}  // namespace weakrev::io
