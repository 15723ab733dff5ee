#pragma once

// JSON wire formats: matrices as { "dim", "re", "im" } (rectangular variants
// carry "rows"/"cols"), measures as { "weights", "atoms" }, maps as
// { "pre_transpose", "kraus" }, plus solver and checker reports.

#include <string>

#include "json.hpp"
#include "meanlab/inequality_lab.hpp"
#include "meanlab/measures.hpp"
#include "meanlab/positive_maps.hpp"
#include "meanlab/power_mean.hpp"
#include "meanlab/spd.hpp"

namespace meanlab {

using Json = nlohmann::json;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json rect_matrix_to_json(const Matrix& m);
Matrix rect_matrix_from_json(const Json& j);

Json pd_to_json(const PdMatrix& a);
PdMatrix pd_from_json(const Json& j);

Json measure_to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const Json& j);

Json map_to_json(const UnitalPositiveMap& phi);
UnitalPositiveMap map_from_json(const Json& j);

Json solve_report_to_json(const SolveReport& report);
Json check_report_to_json(const CheckReport& report);
Json fuzz_summary_to_json(const FuzzSummary& summary);

/// Serializes with 2-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace meanlab
