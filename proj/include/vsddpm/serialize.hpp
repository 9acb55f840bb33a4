#pragma once

#include <json.hpp>

#include "vsddpm/denoiser.hpp"
#include "vsddpm/losses.hpp"
#include "vsddpm/metrics.hpp"
#include "vsddpm/normalize.hpp"
#include "vsddpm/planner.hpp"
#include "vsddpm/schedule.hpp"
#include "vsddpm/tiler.hpp"

namespace vsddpm {

using json = nlohmann::json;

/// Finite values as numbers; infinities as the strings "inf" / "-inf".
json real_or_inf(double x);
double real_from_json(const json& j);

void to_json(json& j, const BudgetPlan& p);
void to_json(json& j, const LossReport& r);
void to_json(json& j, const NormStats& s);
void from_json(const json& j, NormStats& s);
void to_json(json& j, const MetricsReport& r);
void to_json(json& j, const LinearDenoiser& d);
void from_json(const json& j, LinearDenoiser& d);

/// Per-step arrays of the schedule (betas, alpha_bars, base indices).
json schedule_json(const NoiseSchedule& s);

/// Window counts and origins of a tiling plan.
json tile_info_json(const WindowPlan& plan);

}  // namespace vsddpm
