#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "vsddpm/denoiser_contract.hpp"
#include "vsddpm/grid.hpp"
#include "vsddpm/rng.hpp"
#include "vsddpm/schedule.hpp"

namespace vsddpm {

struct ClipRange {
    double lo = -1.0;
    double hi = 1.0;
};

struct SamplerConfig {
    std::size_t steps = 25;
    bool clip_denoised = true;
    ClipRange clip_range{};
    std::uint64_t seed = 0;
};

/// Checks clip_range ordering and that `steps` is a trained step count.
void validate(const SamplerConfig& cfg, const StepSet& trained);

/// x_t = sqrt(abar_t)·x0 + sqrt(1 - abar_t)·noise.
Grid q_sample(const Grid& x0, std::size_t t, const Grid& noise, const NoiseSchedule& s);

struct Posterior {
    Grid mean;
    double variance = 0.0;
    double log_variance_clipped = 0.0;
};

/// Moments of q(x_{t-1} | x_t, x0).
Posterior posterior(const Grid& x0, const Grid& x_t, std::size_t t, const NoiseSchedule& s);

/// Inverts q_sample given a noise estimate, optionally clamping the result.
Grid predict_x0_from_eps(const Grid& x_t, std::size_t t, const Grid& eps_hat, const NoiseSchedule& s,
                         std::optional<ClipRange> clip = std::nullopt);

/// Log model variance: f·log(beta_t) + (1-f)·log(clipped posterior variance),
/// f = (v + 1) / 2 with v clamped to [-1, 1].
double model_log_variance(double v_raw, std::size_t t, const NoiseSchedule& s);
/// Elementwise model_log_variance; the grid holds log-variances.
Grid model_variance(const Grid& v_raw, std::size_t t, const NoiseSchedule& s);

/// Unclamped v_raw at which model_log_variance returns log(variance).
double v_raw_for_variance(double variance, std::size_t t, const NoiseSchedule& s);

/// One ancestral step x_t → x_{t-1}. No noise is added at t = 0.
Grid p_sample_step(const ModelOutput& out, const Grid& x_t, std::size_t t, const NoiseSchedule& s, Rng& rng,
                   const SamplerConfig& cfg);

/// Full reverse chain from standard normal noise, t = T-1 … 0, with the
/// normalized time t/T passed to the denoiser. The generator is seeded from
/// cfg.seed unless one is supplied.
Grid sample(const Denoiser& denoiser, std::span<const Grid> condition, const Shape3& shape, const SamplerConfig& cfg,
            const NoiseSchedule& s);
Grid sample(const Denoiser& denoiser, std::span<const Grid> condition, const Shape3& shape, const SamplerConfig& cfg,
            const NoiseSchedule& s, Rng& rng);

/// KL(N(mean1, exp(logvar1)) || N(mean2, exp(logvar2))) in nats.
double normal_kl(double mean1, double logvar1, double mean2, double logvar2);

/// Negative log density of x under N(mean, exp(logvar)) in nats.
double gaussian_nll(double x, double mean, double logvar);

/// Per-element variational bound term in nats: mean KL between the true
/// posterior and the model's reverse Gaussian for t > 0, and the mean
/// continuous Gaussian negative log-likelihood of x0 at t = 0.
double vlb_term(const Grid& x0, const Grid& x_t, std::size_t t, const ModelOutput& out, const NoiseSchedule& s);

}  // namespace vsddpm
