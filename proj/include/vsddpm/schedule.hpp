#pragma once

#include <cstddef>
#include <vector>

namespace vsddpm {

/// Per-step diffusion quantities for a chain of `steps()` steps.
///
/// Step indices run 0..T-1 with 0 the least noisy. `base_indices` maps each
/// step back to the step of the schedule it was respaced from (identity for a
/// base schedule), so a network can be conditioned either on the absolute base
/// index or on the normalized position t/T.
struct NoiseSchedule {
    std::vector<double> betas;
    std::vector<double> alphas;
    std::vector<double> alpha_bars;
    std::vector<double> alpha_bars_prev;
    std::vector<double> posterior_variance;
    std::vector<double> posterior_mean_coef1;
    std::vector<double> posterior_mean_coef2;
    std::vector<double> log_beta;
    std::vector<double> log_posterior_variance_clipped;
    std::vector<std::size_t> base_indices;
    std::size_t base_steps = 0;

    std::size_t steps() const noexcept { return betas.size(); }

    /// Position of step t on [0, 1): t / T.
    double normalized_time(std::size_t t) const noexcept {
        return static_cast<double>(t) / static_cast<double>(steps());
    }
};

/// Builds every derived field from a beta sequence.
NoiseSchedule schedule_from_betas(std::vector<double> betas);

/// Betas linearly spaced over [beta_start, beta_end], endpoints included.
NoiseSchedule linear_base_schedule(std::size_t base_steps = 1000, double beta_start = 1e-4, double beta_end = 0.02);

/// Base-schedule indices kept when respacing `base_steps` down to `steps`:
/// evenly spaced over [0, base_steps-1], first and last index included.
std::vector<std::size_t> respaced_indices(std::size_t base_steps, std::size_t steps);

/// Shorter schedule whose cumulative alpha-bar matches the base schedule at the
/// respaced indices; betas are recovered as 1 - abar_k / abar_{k-1}.
NoiseSchedule respace(const NoiseSchedule& base, std::size_t steps);

/// Ordered set of distinct step counts a model was trained for.
class StepSet {
public:
    explicit StepSet(std::vector<std::size_t> values);

    const std::vector<std::size_t>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::size_t min() const noexcept { return values_.front(); }
    std::size_t max() const noexcept { return values_.back(); }
    bool contains(std::size_t t) const noexcept;

private:
    std::vector<std::size_t> values_;
};

/// The 17 trained step counts, 5 through 300.
StepSet default_step_set();

}  // namespace vsddpm
