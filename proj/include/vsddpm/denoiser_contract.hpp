#pragma once

#include <cstddef>
#include <span>

#include "vsddpm/grid.hpp"
#include "vsddpm/schedule.hpp"

namespace vsddpm {

/// What a denoiser predicts at one step: the noise estimate and the variance
/// interpolation coefficient (clamped to [-1, 1] by consumers).
struct ModelOutput {
    Grid eps_hat;
    Grid v_raw;
};

/// Extension point standing in for a trained network. Implementations must be
/// deterministic in their inputs and return grids shaped like `x_t`; they are
/// called concurrently from independent windows, so `predict` must be
/// thread-safe. Condition grids (if any) arrive in a fixed caller-defined order
/// and how they are fused is up to the implementation.
class Denoiser {
public:
    virtual ~Denoiser() = default;

    virtual ModelOutput predict(const Grid& x_t, double t_norm, std::size_t t_index, const NoiseSchedule& schedule,
                                std::span<const Grid> condition) const = 0;
};

}  // namespace vsddpm
