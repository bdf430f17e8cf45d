#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "caldist/estimate.hpp"
#include "caldist/instance.hpp"

namespace caldist {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Parses text; syntax errors become kMalformedInput with line and column.
Json parse_json(std::string_view text);

// {"schema": 1, "elements": [{"id", "mass", "mu", "f"}, ...]}. A missing
// schema is accepted; unknown top-level keys (such as "metadata") are
// ignored. Masses may be off by kLoadTolerance and are renormalised.
// Throws kMalformedInput naming the offending field, kInvalidInstance.
Instance instance_from_json(const Json& j);
Json to_json(const Instance& inst);

// {"schema": 1, "assignment": {"<id>": part, ...}} covering every id.
Partition partition_from_json(const Json& j, const Instance& inst);
Json to_json(const Partition& p, const Instance& inst);

// {"schema": 1, "values": {"<id>": value, ...}} covering every id.
Predictor predictor_from_json(const Json& j, const Instance& inst);
Json to_json(const Predictor& g, const Instance& inst);

// {"schema", "value", "error_budget", "solver", "witness"?, "details",
//  "wall_time_ms"?}.
Json to_json(const SolverResult& r, const Instance& inst, bool include_timing = true);

// One row per trial: trial_index, seed, m, value, then the union of the
// extras keys in sorted order (blank where a trial lacks one).
std::string report_csv(const ExperimentReport& report);
Json report_summary(const ExperimentReport& report);

}  // namespace caldist
