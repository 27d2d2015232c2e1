#pragma once

#include <json.hpp>
#include <string>

#include "cylcycles/bounds.hpp"
#include "cylcycles/cycles.hpp"
#include "cylcycles/field.hpp"
#include "cylcycles/flow.hpp"

namespace cylcycles {

// Trig polynomials serialize as {"a0": ..., "cos": [...], "sin": [...]}.
nlohmann::json trigpoly_to_json(const TrigPoly& p);
TrigPoly trigpoly_from_json(const nlohmann::json& j);

// Model file:
//   { "period"?: T, "thresholds": [x1..xn], "pieces": [{"a":…, "b":…}, …] }
// with n+1 pieces ordered bottom-up. A non-default period rescales time to
// 2*pi and multiplies both coefficients of every piece by T / (2*pi).
PiecewiseField model_from_json(const nlohmann::json& j);
PiecewiseField load_model(const std::string& path);
nlohmann::json model_to_json(const PiecewiseField& field);

nlohmann::json cycle_to_json(const LimitCycle& cycle);
nlohmann::json bound_report_to_json(const BoundReport& report);

// Events plus dense samples for plotting.
nlohmann::json trajectory_to_json(const PiecewiseField& field, const Trajectory& traj,
                                  std::size_t samples);

// RFC 4180 CSV row helper.
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace cylcycles
