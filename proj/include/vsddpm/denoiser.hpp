#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vsddpm/denoiser_contract.hpp"
#include "vsddpm/rng.hpp"

namespace vsddpm {

/// Exact model output when x0 ~ N(mu, sigma²) i.i.d. per voxel: x0_hat is the
/// posterior mean E[x0 | x_t], eps_hat follows from it, and v_raw is chosen so
/// the model variance equals the exact reverse-step variance
/// posterior_variance_t + coef1_t² · Var[x0 | x_t], clamped to [-1, 1].
ModelOutput gaussian_eps(const Grid& x_t, std::size_t t, const NoiseSchedule& s, double mu, double sigma);
ModelOutput gaussian_eps(const Grid& x_t, std::size_t t, const NoiseSchedule& s, const Grid& mu, double sigma);

/// Denoiser for a Gaussian data distribution. The mean is a scalar, a fixed
/// grid, or taken from one of the condition grids (x0 = c + N(0, sigma²)).
class GaussianAnalyticDenoiser final : public Denoiser {
public:
    GaussianAnalyticDenoiser(double mu, double sigma);
    GaussianAnalyticDenoiser(Grid mu, double sigma);

    static GaussianAnalyticDenoiser conditional(double sigma, std::size_t condition_index = 0);

    double sigma() const noexcept { return sigma_; }

    ModelOutput predict(const Grid& x_t, double t_norm, std::size_t t_index, const NoiseSchedule& schedule,
                        std::span<const Grid> condition) const override;

private:
    enum class MeanSource { scalar, grid, condition };

    GaussianAnalyticDenoiser(MeanSource source, double sigma, std::size_t condition_index);

    MeanSource source_ = MeanSource::scalar;
    double mu_scalar_ = 0.0;
    Grid mu_grid_;
    std::size_t condition_index_ = 0;
    double sigma_ = 1.0;
};

/// Per-step affine noise predictor eps_hat = a_t·x_t + b_t with a per-step
/// variance coefficient. Coefficients are only meaningful for the schedule
/// they were fitted on.
struct LinearDenoiser final : public Denoiser {
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> v_raw;
    std::vector<double> train_mse;

    std::size_t steps() const noexcept { return a.size(); }

    ModelOutput predict(const Grid& x_t, double t_norm, std::size_t t_index, const NoiseSchedule& schedule,
                        std::span<const Grid> condition) const override;
};

/// Simulated regression sample for step t: x holds x_t, y the true noise.
struct TrainingPairs {
    std::vector<double> x;
    std::vector<double> y;
};

/// Draws `draws` noise realisations per dataset voxel using substream t of `rng`.
TrainingPairs training_pairs(std::span<const Grid> dataset, const NoiseSchedule& s, std::size_t t, const Rng& rng,
                             std::size_t draws = 1);

/// Closed-form least squares of the noise on x_t, independently per step.
LinearDenoiser fit_linear_denoiser(std::span<const Grid> dataset, const NoiseSchedule& s, const Rng& rng,
                                   std::size_t draws = 1);

}  // namespace vsddpm
