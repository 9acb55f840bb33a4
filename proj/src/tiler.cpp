#include "vsddpm/tiler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vsddpm/error.hpp"
#include "vsddpm/planner.hpp"

namespace vsddpm {

namespace {

std::vector<double> taper(std::size_t n, WeightMode mode) {
    std::vector<double> w(n, 1.0);
    if (mode == WeightMode::cosine_taper) {
        for (std::size_t i = 0; i < n; ++i) {
            const double phase = 2.0 * std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
            w[i] = std::max(0.5 * (1.0 - std::cos(phase)), taper_floor);
        }
    }
    return w;
}

}  // namespace

std::vector<std::size_t> axis_offsets(std::size_t extent, std::size_t window, double overlap) {
    const std::size_t count = windows_along(extent, window, overlap);
    const double stride = static_cast<double>(window) * (1.0 - overlap);
    std::vector<std::size_t> offsets(count);
    for (std::size_t k = 0; k + 1 < count; ++k) {
        offsets[k] = static_cast<std::size_t>(std::floor(static_cast<double>(k) * stride));
    }
    offsets.back() = extent - window;
    return offsets;
}

WindowPlan make_plan(const Shape3& volume, const Shape3& window, double overlap, WeightMode mode) {
    WindowPlan plan{volume, window, overlap, {}, mode};
    const auto o0 = axis_offsets(volume[0], window[0], overlap);
    const auto o1 = axis_offsets(volume[1], window[1], overlap);
    const auto o2 = axis_offsets(volume[2], window[2], overlap);
    plan.offsets.reserve(o0.size() * o1.size() * o2.size());
    for (auto a : o0) {
        for (auto b : o1) {
            for (auto c : o2) {
                plan.offsets.push_back({a, b, c});
            }
        }
    }
    return plan;
}

Grid extract_at(const Grid& g, const Index3& origin, const Shape3& window) {
    for (int d = 0; d < 3; ++d) {
        if (origin[d] + window[d] > g.shape()[d]) {
            fail(Errc::window_larger_than_volume, "window at origin exceeds volume " + to_string(g.shape()));
        }
    }
    Grid out(window);
    for (std::size_t i = 0; i < window[0]; ++i) {
        for (std::size_t j = 0; j < window[1]; ++j) {
            const double* src = &g.data()[g.offset(origin[0] + i, origin[1] + j, origin[2])];
            std::copy(src, src + window[2], &out(i, j, 0));
        }
    }
    return out;
}

Grid extract(const Grid& g, const WindowPlan& plan, std::size_t k) {
    require_same_shape(g.shape(), plan.volume, "extract");
    if (k >= plan.size()) {
        fail(Errc::index_out_of_range,
             "window " + std::to_string(k) + " of " + std::to_string(plan.size()));
    }
    return extract_at(g, plan.offsets[k], plan.window);
}

Grid extract(const Volume& v, const WindowPlan& plan, std::size_t k) { return extract(v.grid(), plan, k); }

Grid window_weights(const Shape3& window, WeightMode mode) {
    const auto w0 = taper(window[0], mode);
    const auto w1 = taper(window[1], mode);
    const auto w2 = taper(window[2], mode);
    Grid w(window);
    for (std::size_t i = 0; i < window[0]; ++i) {
        for (std::size_t j = 0; j < window[1]; ++j) {
            for (std::size_t k = 0; k < window[2]; ++k) {
                w(i, j, k) = w0[i] * w1[j] * w2[k];
            }
        }
    }
    return w;
}

Grid stitch(std::span<const Grid> outputs, const WindowPlan& plan) {
    if (outputs.size() != plan.size()) {
        fail(Errc::count_mismatch, std::to_string(outputs.size()) + " outputs for " + std::to_string(plan.size()) +
                                       " windows");
    }
    const Grid weights = window_weights(plan.window, plan.weight_mode);
    // Running weighted mean: identical contributions reproduce the value exactly.
    Grid mean(plan.volume);
    Grid total(plan.volume);
    for (std::size_t w = 0; w < outputs.size(); ++w) {
        require_same_shape(outputs[w].shape(), plan.window, "stitch window output");
        const Index3& o = plan.offsets[w];
        for (std::size_t i = 0; i < plan.window[0]; ++i) {
            for (std::size_t j = 0; j < plan.window[1]; ++j) {
                for (std::size_t k = 0; k < plan.window[2]; ++k) {
                    const double wt = weights(i, j, k);
                    const std::size_t dst = mean.offset(o[0] + i, o[1] + j, o[2] + k);
                    total[dst] += wt;
                    mean[dst] += (wt / total[dst]) * (outputs[w](i, j, k) - mean[dst]);
                }
            }
        }
    }
    for (std::size_t n = 0; n < mean.size(); ++n) {
        require(total[n] > 0.0, Errc::invariant_violation, "voxel not covered by any window");
    }
    return mean;
}

Volume stitch(std::span<const Grid> outputs, const WindowPlan& plan, const Spacing3& spacing, Domain domain) {
    Grid g = stitch(outputs, plan);
    if (const auto range = domain_range(domain)) {
        // Rounding in the weighted average can step past a closed range by an ulp.
        for (double& x : g) {
            x = std::clamp(x, (*range)[0], (*range)[1]);
        }
    }
    return Volume(std::move(g), spacing, domain);
}

std::vector<std::size_t> coverage(const WindowPlan& plan) {
    std::vector<std::size_t> counts(voxel_count(plan.volume), 0);
    const Shape3& s = plan.volume;
    for (const auto& o : plan.offsets) {
        for (std::size_t i = 0; i < plan.window[0]; ++i) {
            for (std::size_t j = 0; j < plan.window[1]; ++j) {
                for (std::size_t k = 0; k < plan.window[2]; ++k) {
                    ++counts[((o[0] + i) * s[1] + o[1] + j) * s[2] + o[2] + k];
                }
            }
        }
    }
    return counts;
}

Patch sample_patch(const Volume& v, const Shape3& window, Rng& rng) {
    Index3 origin{};
    for (int d = 0; d < 3; ++d) {
        if (window[d] == 0 || window[d] > v.shape()[d]) {
            fail(Errc::window_larger_than_volume,
                 "patch " + to_string(window) + " does not fit volume " + to_string(v.shape()));
        }
        origin[d] = static_cast<std::size_t>(rng.uniform_int(v.shape()[d] - window[d] + 1));
    }
    return {extract_at(v.grid(), origin, window), origin};
}

}  // namespace vsddpm
