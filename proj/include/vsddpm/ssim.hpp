#pragma once

#include <cstddef>
#include <vector>

#include "vsddpm/grid.hpp"

namespace vsddpm {

struct SsimOptions {
    std::size_t window = 7;
    double sigma = 1.5;
    double data_range = 2.0;
    double k1 = 0.01;
    double k2 = 0.03;
};

/// Mean SSIM and mean contrast-structure term over all valid window positions.
struct SsimTerms {
    double ssim = 0.0;
    double cs = 0.0;
};

/// Normalized 1D Gaussian taps of odd length `window`.
std::vector<double> gaussian_taps(std::size_t window, double sigma);

/// Local SSIM with a separable Gaussian window, evaluated only where the
/// window fits inside the volume (no padding).
SsimTerms ssim3_terms(const Grid& a, const Grid& b, const SsimOptions& opt = {});

double ssim3(const Grid& a, const Grid& b, const SsimOptions& opt = {});

/// 2×2×2 average pooling; odd trailing planes are dropped.
Grid avg_pool2(const Grid& g);

/// Standard five-scale MS-SSIM exponents.
inline constexpr double ms_ssim_weights[5] = {0.0448, 0.2856, 0.3001, 0.2363, 0.1333};

/// Multi-scale SSIM: contrast-structure at scales 1..n-1 and full SSIM at the
/// coarsest scale, combined with the first `scales` standard exponents
/// renormalized to sum to one. With more than one scale, negative per-scale
/// terms are floored at zero.
double ms_ssim3(const Grid& a, const Grid& b, std::size_t scales, const SsimOptions& opt = {});

}  // namespace vsddpm
