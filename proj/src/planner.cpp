#include "vsddpm/planner.hpp"

#include <cmath>
#include <string>

#include "vsddpm/error.hpp"

namespace vsddpm {

namespace {

void check_profile(const HardwareProfile& hw) {
    require(hw.time_per_infer_s > 0.0 && hw.total_budget_s > 0.0, Errc::invalid_argument,
            "latency and budget must be positive");
}

double runtime(std::size_t windows, std::size_t steps, const HardwareProfile& hw) {
    return static_cast<double>(windows) * static_cast<double>(steps) * hw.time_per_infer_s;
}

}  // namespace

std::size_t windows_along(std::size_t extent, std::size_t window, double overlap) {
    if (!(overlap >= 0.0 && overlap < 1.0)) {
        fail(Errc::invalid_overlap, "overlap must lie in [0, 1), got " + std::to_string(overlap));
    }
    if (window == 0 || window > extent) {
        fail(Errc::window_larger_than_volume,
             "window " + std::to_string(window) + " does not fit extent " + std::to_string(extent));
    }
    const double stride = static_cast<double>(window) * (1.0 - overlap);
    return static_cast<std::size_t>(std::ceil(static_cast<double>(extent - window) / stride)) + 1;
}

std::size_t n_windows(const Shape3& volume, const Shape3& window, double overlap) {
    std::size_t count = 1;
    for (int d = 0; d < 3; ++d) {
        count *= windows_along(volume[d], window[d], overlap);
    }
    return count;
}

double max_steps(const HardwareProfile& hw, std::size_t n_windows) {
    check_profile(hw);
    require(n_windows >= 1, Errc::invalid_argument, "need at least one window");
    return hw.total_budget_s / (hw.time_per_infer_s * static_cast<double>(n_windows));
}

std::size_t select_steps(double t_max, const StepSet& steps) {
    std::size_t best = 0;
    for (std::size_t s : steps.values()) {
        if (static_cast<double>(s) <= t_max) {
            best = s;
        }
    }
    if (best == 0) {
        fail(Errc::budget_infeasible, "step bound " + std::to_string(t_max) + " is below the smallest trained T (" +
                                          std::to_string(steps.min()) + ")");
    }
    return best;
}

double refine_overlap(const Shape3& volume, const Shape3& window, std::size_t t_selected, const HardwareProfile& hw,
                      double p_min, double p_grid) {
    check_profile(hw);
    require(p_grid > 0.0, Errc::invalid_argument, "overlap grid step must be positive");
    require(p_min <= max_refined_overlap, Errc::invalid_overlap, "p_min exceeds the refinement cap");
    if (runtime(n_windows(volume, window, p_min), t_selected, hw) > hw.total_budget_s) {
        fail(Errc::infeasible_at_minimum_overlap, "T=" + std::to_string(t_selected) + " exceeds the budget at overlap " +
                                                      std::to_string(p_min));
    }
    double best = p_min;
    // Grid points are generated from their index so they do not drift.
    for (std::size_t k = 1;; ++k) {
        const double p = p_min + static_cast<double>(k) * p_grid;
        if (p > max_refined_overlap + 1e-12) {
            break;
        }
        if (runtime(n_windows(volume, window, p), t_selected, hw) <= hw.total_budget_s) {
            best = p;
        }
    }
    return best;
}

BudgetPlan plan(const Shape3& volume, const Shape3& window, const HardwareProfile& hw, const StepSet& steps,
                double p_init) {
    if (!(p_init >= min_overlap && p_init < 1.0)) {
        fail(Errc::invalid_overlap, "initial overlap must be at least 0.5, got " + std::to_string(p_init));
    }
    BudgetPlan out;
    const std::size_t initial_windows = n_windows(volume, window, p_init);
    out.t_max_real = max_steps(hw, initial_windows);
    out.t_selected = select_steps(out.t_max_real, steps);
    out.overlap_final = refine_overlap(volume, window, out.t_selected, hw, p_init);
    out.n_windows = n_windows(volume, window, out.overlap_final);
    out.est_runtime_s = runtime(out.n_windows, out.t_selected, hw);
    return out;
}

}  // namespace vsddpm
