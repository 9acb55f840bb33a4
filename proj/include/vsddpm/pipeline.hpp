#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vsddpm/denoiser_contract.hpp"
#include "vsddpm/diffusion.hpp"
#include "vsddpm/tiler.hpp"

namespace vsddpm {

/// Thread count from VSDDPM_THREADS, else the hardware concurrency (at least 1).
std::size_t default_thread_count();

struct TiledSample {
    Grid stitched;
    std::vector<Grid> windows;
};

/// Samples every window of `plan` independently and stitches the results.
/// Window k draws from substream k of cfg.seed, so the output does not depend
/// on the thread count. `condition` holds full-volume grids; each window sees
/// the matching crop of every condition grid.
TiledSample sample_tiled(const Denoiser& denoiser, std::span<const Grid> condition, const WindowPlan& plan,
                         const SamplerConfig& cfg, const NoiseSchedule& s, std::size_t threads = 1);

}  // namespace vsddpm
