#include "vsddpm/normalize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "vsddpm/error.hpp"
#include "vsddpm/stats.hpp"

namespace vsddpm {

namespace {

void expect_domain(const Volume& v, Domain d, const char* op) {
    if (v.domain() != d) {
        fail(Errc::domain_mismatch, std::string(op) + " expects domain " + std::string(domain_name(d)) + ", got " +
                                        std::string(domain_name(v.domain())));
    }
}

template <typename F>
Grid map_values(const Volume& v, F f) {
    Grid g(v.shape());
    for (std::size_t n = 0; n < v.size(); ++n) {
        g[n] = f(v.values()[n]);
    }
    return g;
}

}  // namespace

std::string_view norm_mode_name(NormMode m) noexcept {
    switch (m) {
        case NormMode::ct: return "ct";
        case NormMode::mri_global: return "mri_global";
        case NormMode::mri_per_case: return "mri_per_case";
        case NormMode::mri_nonzero_masked: return "mri_nonzero_masked";
    }
    return "ct";
}

std::optional<NormMode> parse_norm_mode(std::string_view name) noexcept {
    for (NormMode m : {NormMode::ct, NormMode::mri_global, NormMode::mri_per_case, NormMode::mri_nonzero_masked}) {
        if (norm_mode_name(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

std::pair<Volume, NormStats> ct_normalize(const Volume& v) {
    expect_domain(v, Domain::hu, "ct_normalize");
    constexpr double span = ct_clip_hi - ct_clip_lo;
    Grid g = map_values(v, [](double x) {
        const double c = std::clamp(x, ct_clip_lo, ct_clip_hi);
        return 2.0 * (c - ct_clip_lo) / span - 1.0;
    });
    const NormStats stats{ct_clip_lo, ct_clip_hi, 0.0, 1.0, ct_clip_lo, ct_clip_hi, NormMode::ct};
    return {v.with_grid(std::move(g), Domain::norm_sym), stats};
}

Volume ct_denormalize(const Volume& v) {
    expect_domain(v, Domain::norm_sym, "ct_denormalize");
    constexpr double span = ct_clip_hi - ct_clip_lo;
    return v.with_grid(map_values(v, [](double y) { return (y + 1.0) / 2.0 * span + ct_clip_lo; }), Domain::hu);
}

std::pair<Volume, NormStats> mri_normalize(const Volume& v, NormMode mode, const std::optional<NormStats>& external_stats,
                                           const Mask* stats_region) {
    expect_domain(v, Domain::mri_raw, "mri_normalize");
    require(mode != NormMode::ct, Errc::invalid_argument, "mri_normalize needs an MRI mode");

    NormStats stats;
    stats.mode = mode;
    const std::array<double, 2> levels{mri_percentile_lo, mri_percentile_hi};
    const auto bounds = percentiles(v.values(), levels);
    stats.clip_lo = bounds[0];
    stats.clip_hi = bounds[1];
    std::vector<double> clipped(v.values().begin(), v.values().end());
    for (double& x : clipped) {
        x = std::clamp(x, stats.clip_lo, stats.clip_hi);
    }

    switch (mode) {
        case NormMode::mri_per_case:
            stats.mean = mean(clipped);
            stats.std = stddev(clipped);
            break;
        case NormMode::mri_global:
            if (!external_stats) {
                fail(Errc::missing_global_stats, "mri_global mode needs externally computed statistics");
            }
            stats.mean = external_stats->mean;
            stats.std = external_stats->std;
            break;
        case NormMode::mri_nonzero_masked: {
            if (stats_region) {
                require_same_shape(stats_region->shape(), v.shape(), "mri_normalize stats region");
            }
            std::vector<double> region;
            for (std::size_t n = 0; n < v.size(); ++n) {
                const bool inside = stats_region == nullptr || (*stats_region)[n];
                if (inside && v.values()[n] != 0.0) {
                    region.push_back(clipped[n]);
                }
            }
            if (region.empty()) {
                fail(Errc::empty_stats_region, "no non-zero voxels in the statistics region");
            }
            stats.mean = mean(region);
            stats.std = stddev(region);
            break;
        }
        case NormMode::ct:
            break;
    }
    if (!(stats.std > 0.0) || !std::isfinite(stats.std)) {
        fail(Errc::zero_std, "z-score standard deviation is zero");
    }

    for (double& x : clipped) {
        x = (x - stats.mean) / stats.std;
    }
    const auto [lo, hi] = std::minmax_element(clipped.begin(), clipped.end());
    stats.post_min = *lo;
    stats.post_max = *hi;
    if (!(stats.post_max > stats.post_min)) {
        fail(Errc::zero_std, "volume is constant after clipping");
    }
    const double range = stats.post_max - stats.post_min;
    for (double& x : clipped) {
        x = 2.0 * ((x - stats.post_min) / range) - 1.0;
    }
    return {Volume(v.shape(), v.spacing(), std::move(clipped), Domain::norm_sym), stats};
}

Volume mri_denormalize(const Volume& v, const NormStats& stats) {
    expect_domain(v, Domain::norm_sym, "mri_denormalize");
    if (!(stats.std > 0.0) || !(stats.post_max > stats.post_min) || stats.mode == NormMode::ct) {
        fail(Errc::stats_mismatch, "statistics do not describe an MRI normalization");
    }
    const double range = stats.post_max - stats.post_min;
    return v.with_grid(map_values(v,
                                  [&](double y) {
                                      const double z = (y + 1.0) / 2.0 * range + stats.post_min;
                                      return z * stats.std + stats.mean;
                                  }),
                       Domain::mri_raw);
}

Volume postprocess_floor(const Volume& v, double threshold) {
    expect_domain(v, Domain::norm_unit, "postprocess_floor");
    return v.with_grid(map_values(v, [threshold](double x) { return x < threshold ? 0.0 : x; }));
}

Volume sym_to_unit(const Volume& v) {
    expect_domain(v, Domain::norm_sym, "sym_to_unit");
    return v.with_grid(map_values(v, [](double x) { return std::clamp((x + 1.0) / 2.0, 0.0, 1.0); }),
                       Domain::norm_unit);
}

Volume unit_to_sym(const Volume& v) {
    expect_domain(v, Domain::norm_unit, "unit_to_sym");
    return v.with_grid(map_values(v, [](double x) { return std::clamp(2.0 * x - 1.0, -1.0, 1.0); }),
                       Domain::norm_sym);
}

}  // namespace vsddpm
