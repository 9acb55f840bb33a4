#include "vsddpm/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "vsddpm/error.hpp"

namespace vsddpm {

namespace {

// Fills every field that follows from betas and alpha_bars.
void derive_fields(NoiseSchedule& s) {
    const std::size_t n = s.betas.size();
    s.alphas.resize(n);
    s.alpha_bars_prev.resize(n);
    s.posterior_variance.resize(n);
    s.posterior_mean_coef1.resize(n);
    s.posterior_mean_coef2.resize(n);
    s.log_beta.resize(n);
    s.log_posterior_variance_clipped.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        s.alphas[t] = 1.0 - s.betas[t];
        s.alpha_bars_prev[t] = t == 0 ? 1.0 : s.alpha_bars[t - 1];
        const double abar = s.alpha_bars[t];
        const double abar_prev = s.alpha_bars_prev[t];
        s.posterior_variance[t] = s.betas[t] * (1.0 - abar_prev) / (1.0 - abar);
        s.posterior_mean_coef1[t] = s.betas[t] * std::sqrt(abar_prev) / (1.0 - abar);
        s.posterior_mean_coef2[t] = (1.0 - abar_prev) * std::sqrt(s.alphas[t]) / (1.0 - abar);
        s.log_beta[t] = std::log(s.betas[t]);
    }
    // The t = 0 posterior variance is zero; borrow t = 1 for the log.
    s.log_posterior_variance_clipped[0] = std::log(n > 1 ? s.posterior_variance[1] : s.betas[0]);
    for (std::size_t t = 1; t < n; ++t) {
        s.log_posterior_variance_clipped[t] = std::log(s.posterior_variance[t]);
    }
}

void check_betas(const std::vector<double>& betas) {
    require(!betas.empty(), Errc::invalid_argument, "schedule needs at least one step");
    for (double b : betas) {
        require(b > 0.0 && b < 1.0, Errc::invalid_beta_range, "every beta must lie in (0, 1)");
    }
}

}  // namespace

NoiseSchedule schedule_from_betas(std::vector<double> betas) {
    check_betas(betas);
    const std::size_t n = betas.size();
    NoiseSchedule s;
    s.betas = std::move(betas);
    s.alpha_bars.resize(n);
    double running = 1.0;
    for (std::size_t t = 0; t < n; ++t) {
        running *= 1.0 - s.betas[t];
        s.alpha_bars[t] = running;
    }
    derive_fields(s);
    s.base_indices.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        s.base_indices[t] = t;
    }
    s.base_steps = n;
    return s;
}

NoiseSchedule linear_base_schedule(std::size_t base_steps, double beta_start, double beta_end) {
    require(base_steps > 0, Errc::invalid_argument, "base_steps must be positive");
    if (!(beta_start > 0.0 && beta_start <= beta_end && beta_end < 1.0)) {
        fail(Errc::invalid_beta_range, "need 0 < beta_start <= beta_end < 1, got [" + std::to_string(beta_start) +
                                           ", " + std::to_string(beta_end) + "]");
    }
    std::vector<double> betas(base_steps);
    if (base_steps == 1) {
        betas[0] = beta_start;
    } else {
        const double span = beta_end - beta_start;
        for (std::size_t t = 0; t < base_steps; ++t) {
            betas[t] = beta_start + span * static_cast<double>(t) / static_cast<double>(base_steps - 1);
        }
        betas.back() = beta_end;
    }
    return schedule_from_betas(std::move(betas));
}

std::vector<std::size_t> respaced_indices(std::size_t base_steps, std::size_t steps) {
    require(steps >= 1, Errc::invalid_argument, "step count must be positive");
    if (steps > base_steps) {
        fail(Errc::step_count_too_large,
             std::to_string(steps) + " steps requested from a " + std::to_string(base_steps) + "-step schedule");
    }
    std::vector<std::size_t> idx(steps);
    if (steps == 1) {
        idx[0] = base_steps - 1;
        return idx;
    }
    const double stride = static_cast<double>(base_steps - 1) / static_cast<double>(steps - 1);
    for (std::size_t k = 0; k < steps; ++k) {
        idx[k] = static_cast<std::size_t>(std::llround(stride * static_cast<double>(k)));
    }
    idx.back() = base_steps - 1;
    return idx;
}

NoiseSchedule respace(const NoiseSchedule& base, std::size_t steps) {
    const auto idx = respaced_indices(base.steps(), steps);
    NoiseSchedule s;
    s.betas.resize(steps);
    s.alpha_bars.resize(steps);
    s.base_indices.resize(steps);
    double prev = 1.0;
    for (std::size_t k = 0; k < steps; ++k) {
        // The selected cumulative products are kept verbatim, not re-multiplied.
        s.alpha_bars[k] = base.alpha_bars[idx[k]];
        s.betas[k] = 1.0 - s.alpha_bars[k] / prev;
        s.base_indices[k] = base.base_indices[idx[k]];
        prev = s.alpha_bars[k];
    }
    check_betas(s.betas);
    derive_fields(s);
    s.base_steps = base.base_steps;
    return s;
}

StepSet::StepSet(std::vector<std::size_t> values) : values_(std::move(values)) {
    require(!values_.empty(), Errc::invalid_argument, "step set must not be empty");
    require(values_.front() > 0, Errc::invalid_argument, "step counts must be positive");
    require(std::adjacent_find(values_.begin(), values_.end(), std::greater_equal<>()) == values_.end(),
            Errc::invalid_argument, "step set must be strictly increasing");
}

bool StepSet::contains(std::size_t t) const noexcept {
    return std::binary_search(values_.begin(), values_.end(), t);
}

StepSet default_step_set() {
    return StepSet({5, 10, 15, 20, 25, 35, 50, 75, 100, 125, 150, 175, 200, 225, 250, 275, 300});
}

}  // namespace vsddpm
