#include "vsddpm/denoiser.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vsddpm/diffusion.hpp"
#include "vsddpm/error.hpp"

namespace vsddpm {

namespace {

struct GaussianStep {
    double gain;             // d x0_hat / d x_t
    double x0_variance;      // Var[x0 | x_t]
    double v_raw;
};

GaussianStep gaussian_step(std::size_t t, const NoiseSchedule& s, double sigma) {
    require(sigma > 0.0, Errc::invalid_argument, "sigma must be positive");
    if (t >= s.steps()) {
        fail(Errc::step_out_of_range, "step " + std::to_string(t) + " outside the schedule");
    }
    const double abar = s.alpha_bars[t];
    const double var = sigma * sigma;
    const double denom = abar * var + (1.0 - abar);
    GaussianStep g{};
    g.gain = std::sqrt(abar) * var / denom;
    g.x0_variance = var * (1.0 - abar) / denom;
    const double c1 = s.posterior_mean_coef1[t];
    const double reverse_variance = s.posterior_variance[t] + c1 * c1 * g.x0_variance;
    g.v_raw = std::clamp(v_raw_for_variance(reverse_variance, t, s), -1.0, 1.0);
    return g;
}

template <typename MeanAt>
ModelOutput gaussian_output(const Grid& x_t, std::size_t t, const NoiseSchedule& s, double sigma, MeanAt mean_at) {
    const GaussianStep g = gaussian_step(t, s, sigma);
    const double sqrt_abar = std::sqrt(s.alpha_bars[t]);
    const double sqrt_one_minus = std::sqrt(1.0 - s.alpha_bars[t]);
    ModelOutput out{Grid(x_t.shape()), Grid(x_t.shape(), g.v_raw)};
    for (std::size_t n = 0; n < x_t.size(); ++n) {
        const double mu = mean_at(n);
        const double x0_hat = mu + g.gain * (x_t[n] - sqrt_abar * mu);
        out.eps_hat[n] = (x_t[n] - sqrt_abar * x0_hat) / sqrt_one_minus;
    }
    return out;
}

}  // namespace

ModelOutput gaussian_eps(const Grid& x_t, std::size_t t, const NoiseSchedule& s, double mu, double sigma) {
    return gaussian_output(x_t, t, s, sigma, [mu](std::size_t) { return mu; });
}

ModelOutput gaussian_eps(const Grid& x_t, std::size_t t, const NoiseSchedule& s, const Grid& mu, double sigma) {
    require_same_shape(mu.shape(), x_t.shape(), "gaussian_eps mean/x_t");
    return gaussian_output(x_t, t, s, sigma, [&mu](std::size_t n) { return mu[n]; });
}

GaussianAnalyticDenoiser::GaussianAnalyticDenoiser(double mu, double sigma)
    : source_(MeanSource::scalar), mu_scalar_(mu), sigma_(sigma) {
    require(sigma > 0.0, Errc::invalid_argument, "sigma must be positive");
}

GaussianAnalyticDenoiser::GaussianAnalyticDenoiser(Grid mu, double sigma)
    : source_(MeanSource::grid), mu_grid_(std::move(mu)), sigma_(sigma) {
    require(sigma > 0.0, Errc::invalid_argument, "sigma must be positive");
}

GaussianAnalyticDenoiser::GaussianAnalyticDenoiser(MeanSource source, double sigma, std::size_t condition_index)
    : source_(source), condition_index_(condition_index), sigma_(sigma) {
    require(sigma > 0.0, Errc::invalid_argument, "sigma must be positive");
}

GaussianAnalyticDenoiser GaussianAnalyticDenoiser::conditional(double sigma, std::size_t condition_index) {
    return GaussianAnalyticDenoiser(MeanSource::condition, sigma, condition_index);
}

ModelOutput GaussianAnalyticDenoiser::predict(const Grid& x_t, double /*t_norm*/, std::size_t t_index,
                                              const NoiseSchedule& schedule, std::span<const Grid> condition) const {
    switch (source_) {
        case MeanSource::scalar:
            return gaussian_eps(x_t, t_index, schedule, mu_scalar_, sigma_);
        case MeanSource::grid:
            return gaussian_eps(x_t, t_index, schedule, mu_grid_, sigma_);
        case MeanSource::condition:
            require(condition_index_ < condition.size(), Errc::invalid_argument,
                    "conditional denoiser needs condition grid " + std::to_string(condition_index_));
            return gaussian_eps(x_t, t_index, schedule, condition[condition_index_], sigma_);
    }
    fail(Errc::invalid_argument, "unknown mean source");
}

ModelOutput LinearDenoiser::predict(const Grid& x_t, double /*t_norm*/, std::size_t t_index,
                                    const NoiseSchedule& schedule, std::span<const Grid> /*condition*/) const {
    require(schedule.steps() == steps(), Errc::invalid_argument,
            "linear denoiser fitted for " + std::to_string(steps()) + " steps, schedule has " +
                std::to_string(schedule.steps()));
    if (t_index >= steps()) {
        fail(Errc::step_out_of_range, "step " + std::to_string(t_index) + " outside the coefficient table");
    }
    ModelOutput out{Grid(x_t.shape()), Grid(x_t.shape(), std::clamp(v_raw[t_index], -1.0, 1.0))};
    for (std::size_t n = 0; n < x_t.size(); ++n) {
        out.eps_hat[n] = a[t_index] * x_t[n] + b[t_index];
    }
    return out;
}

TrainingPairs training_pairs(std::span<const Grid> dataset, const NoiseSchedule& s, std::size_t t, const Rng& rng,
                             std::size_t draws) {
    require(!dataset.empty(), Errc::empty_dataset, "dataset is empty");
    require(draws > 0, Errc::invalid_argument, "draws must be positive");
    if (t >= s.steps()) {
        fail(Errc::step_out_of_range, "step " + std::to_string(t) + " outside the schedule");
    }
    Rng stream = rng.substream(t);
    const double a = std::sqrt(s.alpha_bars[t]);
    const double b = std::sqrt(1.0 - s.alpha_bars[t]);
    TrainingPairs pairs;
    for (const auto& grid : dataset) {
        for (std::size_t r = 0; r < draws; ++r) {
            for (double x0 : grid) {
                const double eps = stream.normal();
                pairs.x.push_back(a * x0 + b * eps);
                pairs.y.push_back(eps);
            }
        }
    }
    return pairs;
}

LinearDenoiser fit_linear_denoiser(std::span<const Grid> dataset, const NoiseSchedule& s, const Rng& rng,
                                   std::size_t draws) {
    require(!dataset.empty(), Errc::empty_dataset, "dataset is empty");
    LinearDenoiser model;
    for (std::size_t t = 0; t < s.steps(); ++t) {
        const TrainingPairs p = training_pairs(dataset, s, t, rng, draws);
        const auto n = static_cast<double>(p.x.size());
        double mx = 0.0;
        double my = 0.0;
        for (std::size_t i = 0; i < p.x.size(); ++i) {
            mx += p.x[i];
            my += p.y[i];
        }
        mx /= n;
        my /= n;
        double sxx = 0.0;
        double sxy = 0.0;
        for (std::size_t i = 0; i < p.x.size(); ++i) {
            sxx += (p.x[i] - mx) * (p.x[i] - mx);
            sxy += (p.x[i] - mx) * (p.y[i] - my);
        }
        if (!(sxx > 0.0)) {
            fail(Errc::degenerate_design, "x_t has zero variance at step " + std::to_string(t));
        }
        const double slope = sxy / sxx;
        const double intercept = my - slope * mx;
        double sse = 0.0;
        for (std::size_t i = 0; i < p.x.size(); ++i) {
            const double r = p.y[i] - slope * p.x[i] - intercept;
            sse += r * r;
        }
        const double mse = sse / n;

        // Residual noise error maps to a residual x0 error of (1 - abar)/abar · mse.
        const double abar = s.alpha_bars[t];
        const double c1 = s.posterior_mean_coef1[t];
        const double reverse_variance = s.posterior_variance[t] + c1 * c1 * (1.0 - abar) / abar * mse;
        const double v = reverse_variance > 0.0 ? v_raw_for_variance(reverse_variance, t, s) : -1.0;

        model.a.push_back(slope);
        model.b.push_back(intercept);
        model.v_raw.push_back(std::clamp(v, -1.0, 1.0));
        model.train_mse.push_back(mse);
    }
    return model;
}

}  // namespace vsddpm
