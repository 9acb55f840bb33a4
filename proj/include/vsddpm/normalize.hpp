#pragma once

#include <optional>
#include <string_view>
#include <utility>

#include "vsddpm/volume.hpp"

namespace vsddpm {

enum class NormMode { ct, mri_global, mri_per_case, mri_nonzero_masked };

std::string_view norm_mode_name(NormMode m) noexcept;
std::optional<NormMode> parse_norm_mode(std::string_view name) noexcept;

/// Everything needed to invert a normalization.
struct NormStats {
    double clip_lo = 0.0;
    double clip_hi = 0.0;
    double mean = 0.0;
    double std = 1.0;
    double post_min = 0.0;
    double post_max = 0.0;
    NormMode mode = NormMode::ct;
};

inline constexpr double ct_clip_lo = -1000.0;
inline constexpr double ct_clip_hi = 1600.0;
inline constexpr double mri_percentile_lo = 0.1;
inline constexpr double mri_percentile_hi = 99.9;

/// Clamp to [-1000, 1600] HU, then map linearly onto [-1, 1].
std::pair<Volume, NormStats> ct_normalize(const Volume& v);
Volume ct_denormalize(const Volume& v);

/// Percentile clip at P0.1/P99.9, z-score, then map the observed z range onto
/// [-1, 1]. Statistics source by mode: mri_per_case uses this volume;
/// mri_global takes mean/std from `external_stats`; mri_nonzero_masked uses
/// the non-zero voxels inside `stats_region` (the whole volume when absent).
std::pair<Volume, NormStats> mri_normalize(const Volume& v, NormMode mode,
                                           const std::optional<NormStats>& external_stats = std::nullopt,
                                           const Mask* stats_region = nullptr);
Volume mri_denormalize(const Volume& v, const NormStats& stats);

/// Zero every value below `threshold` in a [0, 1] volume.
Volume postprocess_floor(const Volume& v, double threshold = 0.01);

/// Affine maps between the symmetric and unit normalized domains.
Volume sym_to_unit(const Volume& v);
Volume unit_to_sym(const Volume& v);

}  // namespace vsddpm
