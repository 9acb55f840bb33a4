#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "vsddpm/rng.hpp"
#include "vsddpm/volume.hpp"

namespace vsddpm {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

inline constexpr double default_max_rotation_deg = 3.0;
inline constexpr double min_scale_factor = 0.1;
inline constexpr double max_scale_factor = 10.0;
inline constexpr double max_shear = 1.0;
inline constexpr int max_bias_order = 3;

struct AugmentConfig {
    double rotation_deg = default_max_rotation_deg;
    std::pair<double, double> scale_range{0.95, 1.05};
    double shear_max = 0.02;
    double intensity_shift_max = 0.0;
    double noise_sigma = 0.0;
    double smooth_sigma = 0.0;
    int bias_field_order = 0;
    double bias_field_amp = 0.0;
    std::uint64_t seed = 0;
};

/// Throws on a config that violates its invariants.
void validate(const AugmentConfig& cfg);

/// Resamples `v` through the physical-space map y = A·x about the volume
/// centre: each output voxel takes the trilinear value at A⁻¹·y. Points
/// outside the volume take the volume minimum.
Volume affine_resample(const Volume& v, const Mat3& forward);

/// Rotation about axes 0, 1 and 2 in that order (degrees).
Volume rotate(const Volume& v, const Vec3& angles_deg, double max_deg = default_max_rotation_deg);
Volume scale(const Volume& v, const Vec3& factors);
/// Shear coefficients (s01, s02, s12): axis 0 gains s01·x1 + s02·x2, axis 1 gains s12·x2.
Volume shear(const Volume& v, const Vec3& coefficients);

Volume intensity_shift(const Volume& v, double delta);
Volume gaussian_noise(const Volume& v, double sigma, Rng& rng);
/// Separable Gaussian of radius ceil(3σ), taps renormalized, borders replicated.
Volume gaussian_smooth(const Volume& v, double sigma);
/// Multiplies by exp(P) for a random polynomial P of total degree ≤ order in
/// coordinates scaled to [−1, 1]³, rescaled so max|P| equals the amplitude.
Volume bias_field(const Volume& v, int order, double amplitude, Rng& rng);

/// Applies every enabled transform with parameters drawn from `cfg.seed`.
Volume augment(const Volume& v, const AugmentConfig& cfg);

}  // namespace vsddpm
