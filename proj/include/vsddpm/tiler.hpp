#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "vsddpm/grid.hpp"
#include "vsddpm/rng.hpp"
#include "vsddpm/volume.hpp"

namespace vsddpm {

enum class WeightMode { uniform, cosine_taper };

inline constexpr double taper_floor = 0.01;

struct WindowPlan {
    Shape3 volume{};
    Shape3 window{};
    double overlap = 0.5;
    std::vector<Index3> offsets;
    WeightMode weight_mode = WeightMode::cosine_taper;

    std::size_t size() const noexcept { return offsets.size(); }
};

/// Window origins along one axis: floor(k · R(1-p)) for all but the last
/// window, which is clamped flush to extent - R. The count matches
/// windows_along().
std::vector<std::size_t> axis_offsets(std::size_t extent, std::size_t window, double overlap);

WindowPlan make_plan(const Shape3& volume, const Shape3& window, double overlap,
                     WeightMode mode = WeightMode::cosine_taper);

/// Copy of window k of `g`.
Grid extract(const Grid& g, const WindowPlan& plan, std::size_t k);
Grid extract(const Volume& v, const WindowPlan& plan, std::size_t k);

/// Copy of the R-shaped block at `origin`.
Grid extract_at(const Grid& g, const Index3& origin, const Shape3& window);

/// Separable blend weights for one window; the cosine taper is a raised
/// cosine floored at taper_floor.
Grid window_weights(const Shape3& window, WeightMode mode);

/// Weighted per-voxel average of per-window outputs.
Grid stitch(std::span<const Grid> outputs, const WindowPlan& plan);
Volume stitch(std::span<const Grid> outputs, const WindowPlan& plan, const Spacing3& spacing, Domain domain);

/// Number of windows covering each voxel.
std::vector<std::size_t> coverage(const WindowPlan& plan);

struct Patch {
    Grid data;
    Index3 origin{};
};

/// Uniformly random window of shape `window` from `v`.
Patch sample_patch(const Volume& v, const Shape3& window, Rng& rng);

}  // namespace vsddpm
