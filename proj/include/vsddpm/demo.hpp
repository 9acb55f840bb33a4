#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vsddpm/denoiser.hpp"
#include "vsddpm/metrics.hpp"
#include "vsddpm/planner.hpp"
#include "vsddpm/volume.hpp"

namespace vsddpm {

struct DemoOptions {
    Shape3 shape{48, 48, 32};
    Spacing3 spacing{1.0, 1.0, 1.5};
    Shape3 window{16, 16, 16};
    double sigma = 0.1;
    HardwareProfile hardware{};
    std::optional<std::size_t> steps;  // overrides the planner's choice
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    bool fit_linear = false;
};

struct DemoCheck {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    std::string relation;  // "==", "<=", ">="
    bool pass = false;
};

struct DemoResult {
    BudgetPlan plan;
    std::size_t steps_used = 0;
    double residual_mean = 0.0;
    double residual_std = 0.0;
    MetricsReport metrics;
    std::vector<DemoCheck> checks;
    std::optional<LinearDenoiser> linear;

    bool passed() const;
};

/// Smooth phantom of Gaussian blobs with values spanning [-0.6, 0.6].
Volume demo_phantom(const Shape3& shape, const Spacing3& spacing);

/// Plan, tiled conditional sampling of x0 = c + N(0, sigma²), stitching and
/// scoring against the phantom, with pass/fail checks.
DemoResult run_demo(const DemoOptions& opt);

nlohmann::json demo_json(const DemoResult& r);

}  // namespace vsddpm
