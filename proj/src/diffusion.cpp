#include "vsddpm/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vsddpm/error.hpp"

namespace vsddpm {

namespace {

void check_step(std::size_t t, const NoiseSchedule& s) {
    if (t >= s.steps()) {
        fail(Errc::step_out_of_range, "step " + std::to_string(t) + " outside a " + std::to_string(s.steps()) +
                                          "-step schedule");
    }
}

}  // namespace

void validate(const SamplerConfig& cfg, const StepSet& trained) {
    require(cfg.clip_range.lo < cfg.clip_range.hi, Errc::invalid_argument, "clip range must satisfy lo < hi");
    require(trained.contains(cfg.steps), Errc::invalid_argument,
            std::to_string(cfg.steps) + " is not a trained step count");
}

Grid q_sample(const Grid& x0, std::size_t t, const Grid& noise, const NoiseSchedule& s) {
    require_same_shape(x0.shape(), noise.shape(), "q_sample x0/noise");
    check_step(t, s);
    const double a = std::sqrt(s.alpha_bars[t]);
    const double b = std::sqrt(1.0 - s.alpha_bars[t]);
    Grid out(x0.shape());
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = a * x0[n] + b * noise[n];
    }
    return out;
}

Posterior posterior(const Grid& x0, const Grid& x_t, std::size_t t, const NoiseSchedule& s) {
    require_same_shape(x0.shape(), x_t.shape(), "posterior x0/x_t");
    check_step(t, s);
    const double c1 = s.posterior_mean_coef1[t];
    const double c2 = s.posterior_mean_coef2[t];
    Posterior p{Grid(x0.shape()), s.posterior_variance[t], s.log_posterior_variance_clipped[t]};
    for (std::size_t n = 0; n < x0.size(); ++n) {
        p.mean[n] = c1 * x0[n] + c2 * x_t[n];
    }
    return p;
}

Grid predict_x0_from_eps(const Grid& x_t, std::size_t t, const Grid& eps_hat, const NoiseSchedule& s,
                         std::optional<ClipRange> clip) {
    require_same_shape(x_t.shape(), eps_hat.shape(), "predict_x0_from_eps x_t/eps");
    check_step(t, s);
    const double recip = std::sqrt(1.0 / s.alpha_bars[t]);
    const double recip_m1 = std::sqrt(1.0 / s.alpha_bars[t] - 1.0);
    Grid out(x_t.shape());
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = recip * x_t[n] - recip_m1 * eps_hat[n];
    }
    if (clip) {
        for (double& x : out) {
            x = std::clamp(x, clip->lo, clip->hi);
        }
    }
    return out;
}

double model_log_variance(double v_raw, std::size_t t, const NoiseSchedule& s) {
    check_step(t, s);
    const double frac = (std::clamp(v_raw, -1.0, 1.0) + 1.0) / 2.0;
    return frac * s.log_beta[t] + (1.0 - frac) * s.log_posterior_variance_clipped[t];
}

Grid model_variance(const Grid& v_raw, std::size_t t, const NoiseSchedule& s) {
    check_step(t, s);
    Grid out(v_raw.shape());
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = model_log_variance(v_raw[n], t, s);
    }
    return out;
}

double v_raw_for_variance(double variance, std::size_t t, const NoiseSchedule& s) {
    check_step(t, s);
    const double hi = s.log_beta[t];
    const double lo = s.log_posterior_variance_clipped[t];
    if (hi == lo) {
        return 1.0;
    }
    return 2.0 * (std::log(variance) - lo) / (hi - lo) - 1.0;
}

Grid p_sample_step(const ModelOutput& out, const Grid& x_t, std::size_t t, const NoiseSchedule& s, Rng& rng,
                   const SamplerConfig& cfg) {
    require_same_shape(out.eps_hat.shape(), x_t.shape(), "p_sample_step eps/x_t");
    require_same_shape(out.v_raw.shape(), x_t.shape(), "p_sample_step v_raw/x_t");
    check_step(t, s);
    const auto clip = cfg.clip_denoised ? std::optional<ClipRange>(cfg.clip_range) : std::nullopt;
    const Grid x0_hat = predict_x0_from_eps(x_t, t, out.eps_hat, s, clip);
    const double c1 = s.posterior_mean_coef1[t];
    const double c2 = s.posterior_mean_coef2[t];
    Grid next(x_t.shape());
    for (std::size_t n = 0; n < next.size(); ++n) {
        next[n] = c1 * x0_hat[n] + c2 * x_t[n];
    }
    if (t > 0) {
        for (std::size_t n = 0; n < next.size(); ++n) {
            next[n] += std::exp(0.5 * model_log_variance(out.v_raw[n], t, s)) * rng.normal();
        }
    }
    return next;
}

Grid sample(const Denoiser& denoiser, std::span<const Grid> condition, const Shape3& shape, const SamplerConfig& cfg,
            const NoiseSchedule& s) {
    Rng rng(cfg.seed);
    return sample(denoiser, condition, shape, cfg, s, rng);
}

Grid sample(const Denoiser& denoiser, std::span<const Grid> condition, const Shape3& shape, const SamplerConfig& cfg,
            const NoiseSchedule& s, Rng& rng) {
    require(cfg.steps == s.steps(), Errc::invalid_argument,
            "sampler configured for " + std::to_string(cfg.steps) + " steps but schedule has " +
                std::to_string(s.steps()));
    for (const auto& c : condition) {
        require_same_shape(c.shape(), shape, "sample condition");
    }
    Grid x(shape);
    for (double& v : x) {
        v = rng.normal();
    }
    for (std::size_t t = s.steps(); t-- > 0;) {
        const ModelOutput out = denoiser.predict(x, s.normalized_time(t), t, s, condition);
        x = p_sample_step(out, x, t, s, rng, cfg);
    }
    return x;
}

double normal_kl(double mean1, double logvar1, double mean2, double logvar2) {
    const double d = mean1 - mean2;
    return 0.5 * (-1.0 + logvar2 - logvar1 + std::exp(logvar1 - logvar2) + d * d * std::exp(-logvar2));
}

double gaussian_nll(double x, double mean, double logvar) {
    const double d = x - mean;
    return 0.5 * (std::log(2.0 * std::numbers::pi) + logvar + d * d * std::exp(-logvar));
}

double vlb_term(const Grid& x0, const Grid& x_t, std::size_t t, const ModelOutput& out, const NoiseSchedule& s) {
    require_same_shape(x0.shape(), x_t.shape(), "vlb_term x0/x_t");
    require_same_shape(out.eps_hat.shape(), x_t.shape(), "vlb_term eps/x_t");
    require_same_shape(out.v_raw.shape(), x_t.shape(), "vlb_term v_raw/x_t");
    check_step(t, s);
    const Grid x0_hat = predict_x0_from_eps(x_t, t, out.eps_hat, s);
    const Posterior truth = posterior(x0, x_t, t, s);
    const Posterior model = posterior(x0_hat, x_t, t, s);
    double total = 0.0;
    for (std::size_t n = 0; n < x0.size(); ++n) {
        const double logvar = model_log_variance(out.v_raw[n], t, s);
        total += t == 0 ? gaussian_nll(x0[n], model.mean[n], logvar)
                        : normal_kl(truth.mean[n], truth.log_variance_clipped, model.mean[n], logvar);
    }
    return total / static_cast<double>(x0.size());
}

}  // namespace vsddpm
