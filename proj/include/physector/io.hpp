#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "physector/extraction.hpp"
#include "physector/measurement.hpp"
#include "physector/simulate.hpp"
#include "physector/states.hpp"

namespace physector {

// File schemas:
//   measurement  { "n_outcomes": J, "n_levels": D, "complete": bool,
//                  "coefficients": [[row-major reals]] }
//   state        { "n_levels": D, "diag": [reals] }
//   counts       { "n_events": N, "seed": s, "counts": [ints] }   (seed optional)
//   report       full ExtractionReport structure
// Measurements are also accepted as CSV, one outcome per row.

nlohmann::json to_json(const CommutingMeasurement& m);
nlohmann::json to_json(const DiagonalState& state);
nlohmann::json to_json(const FrequencyRecord& record);
nlohmann::json to_json(const ExtractionReport& report);

CommutingMeasurement measurement_from_json(const nlohmann::json& j);
DiagonalState state_from_json(const nlohmann::json& j);
FrequencyRecord record_from_json(const nlohmann::json& j);

CommutingMeasurement measurement_from_csv(const std::string& text);

// Load by path; measurements dispatch on the .csv extension. Parse problems
// surface as ValidationError.
CommutingMeasurement load_measurement(const std::string& path);
DiagonalState load_state(const std::string& path);
FrequencyRecord load_record(const std::string& path);

void save_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

// Plot-ready per-step table:
// k,subspace_levels,mean_b_sub,std_b_sub,mean_w,mean_variance
std::string report_to_csv(const ExtractionReport& report);

std::string to_string(ExtractionStatus status);
std::string to_string(LevelOrdering ordering);

}  // namespace physector
