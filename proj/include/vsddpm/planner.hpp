#pragma once

#include <cstddef>

#include "vsddpm/grid.hpp"
#include "vsddpm/schedule.hpp"

namespace vsddpm {

/// Measured (or assumed) cost of one denoising step on one window, and the
/// wall-clock budget for a whole volume.
struct HardwareProfile {
    double time_per_infer_s = 0.433;
    double total_budget_s = 900.0;
};

struct BudgetPlan {
    std::size_t n_windows = 0;
    double t_max_real = 0.0;
    std::size_t t_selected = 0;
    double overlap_final = 0.0;
    double est_runtime_s = 0.0;
};

inline constexpr double min_overlap = 0.5;
inline constexpr double max_refined_overlap = 0.95;

/// Windows along one axis: ceil((I - R) / (R (1 - p))) + 1.
std::size_t windows_along(std::size_t extent, std::size_t window, double overlap);

/// Product of windows_along over the three axes.
std::size_t n_windows(const Shape3& volume, const Shape3& window, double overlap);

/// Real-valued step bound: total_budget / (time_per_infer · n_windows).
double max_steps(const HardwareProfile& hw, std::size_t n_windows);

/// Largest trained step count not exceeding t_max.
std::size_t select_steps(double t_max, const StepSet& steps);

/// Largest overlap on the grid p_min, p_min + p_grid, …, 0.95 whose window
/// count still fits the budget at `t_selected` steps.
double refine_overlap(const Shape3& volume, const Shape3& window, std::size_t t_selected, const HardwareProfile& hw,
                      double p_min = min_overlap, double p_grid = 0.01);

/// Window count at p_init → step bound → trained step selection → overlap refinement.
BudgetPlan plan(const Shape3& volume, const Shape3& window, const HardwareProfile& hw, const StepSet& steps,
                double p_init = min_overlap);

}  // namespace vsddpm
