#include "vsddpm/losses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vsddpm/error.hpp"
#include "vsddpm/rng.hpp"

namespace vsddpm {

namespace {

void check_weights(const LossWeights& w) {
    require(w.lambda1 >= 0.0 && w.lambda2 >= 0.0 && w.var_penalty >= 0.0, Errc::invalid_argument,
            "loss weights must be non-negative");
}

LossReport finish(std::vector<LossTerm> terms) {
    LossReport r{std::move(terms), 0.0};
    for (const auto& t : r.terms) {
        r.total += t.weight * t.value;
    }
    return r;
}

// 3×3×3 correlation with edge replication; taps indexed (di*3+dj)*3+dk.
void accumulate_conv3(const Grid& in, const std::vector<double>& taps, Grid& out) {
    const Shape3 s = in.shape();
    auto clamp_index = [](std::size_t i, int d, std::size_t n) {
        const auto v = static_cast<std::ptrdiff_t>(i) + d;
        return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(v, 0, static_cast<std::ptrdiff_t>(n) - 1));
    };
    for (std::size_t i = 0; i < s[0]; ++i) {
        for (std::size_t j = 0; j < s[1]; ++j) {
            for (std::size_t k = 0; k < s[2]; ++k) {
                double acc = 0.0;
                std::size_t tap = 0;
                for (int di = -1; di <= 1; ++di) {
                    const std::size_t ii = clamp_index(i, di, s[0]);
                    for (int dj = -1; dj <= 1; ++dj) {
                        const std::size_t jj = clamp_index(j, dj, s[1]);
                        for (int dk = -1; dk <= 1; ++dk, ++tap) {
                            acc += taps[tap] * in(ii, jj, clamp_index(k, dk, s[2]));
                        }
                    }
                }
                out(i, j, k) += acc;
            }
        }
    }
}

void relu(Grid& g) {
    for (double& x : g) {
        x = std::max(x, 0.0);
    }
}

}  // namespace

double mae(const Grid& pred, const Grid& target) {
    require_same_shape(pred.shape(), target.shape(), "mae");
    require(!pred.empty(), Errc::invalid_argument, "mae of empty grids");
    double acc = 0.0;
    for (std::size_t n = 0; n < pred.size(); ++n) {
        acc += std::abs(pred[n] - target[n]);
    }
    return acc / static_cast<double>(pred.size());
}

double mse(const Grid& pred, const Grid& target) {
    require_same_shape(pred.shape(), target.shape(), "mse");
    require(!pred.empty(), Errc::invalid_argument, "mse of empty grids");
    double acc = 0.0;
    for (std::size_t n = 0; n < pred.size(); ++n) {
        const double d = pred[n] - target[n];
        acc += d * d;
    }
    return acc / static_cast<double>(pred.size());
}

RandomConvExtractor::RandomConvExtractor(std::uint64_t seed, std::size_t channels) : channels_(channels) {
    require(channels > 0, Errc::invalid_argument, "extractor needs at least one channel");
    Rng rng(seed);
    // He-style scaling keeps activations O(1) for inputs in [-1, 1].
    const double scale1 = std::sqrt(2.0 / 27.0);
    const double scale2 = std::sqrt(2.0 / (27.0 * static_cast<double>(channels)));
    layer1_.assign(channels, std::vector<double>(27));
    for (auto& taps : layer1_) {
        for (double& w : taps) {
            w = scale1 * rng.normal();
        }
    }
    layer2_.assign(channels * channels, std::vector<double>(27));
    for (auto& taps : layer2_) {
        for (double& w : taps) {
            w = scale2 * rng.normal();
        }
    }
}

std::vector<Grid> RandomConvExtractor::features(const Grid& x) const {
    std::vector<Grid> out;
    std::vector<Grid> first;
    for (std::size_t c = 0; c < channels_; ++c) {
        Grid f(x.shape());
        accumulate_conv3(x, layer1_[c], f);
        relu(f);
        first.push_back(f);
        out.push_back(std::move(f));
    }
    const Shape3 s = x.shape();
    if (s[0] < 2 || s[1] < 2 || s[2] < 2) {
        return out;
    }
    std::vector<Grid> pooled;
    for (const auto& f : first) {
        pooled.push_back(avg_pool2(f));
    }
    for (std::size_t c = 0; c < channels_; ++c) {
        Grid f(pooled.front().shape());
        for (std::size_t m = 0; m < channels_; ++m) {
            accumulate_conv3(pooled[m], layer2(c, m), f);
        }
        relu(f);
        out.push_back(std::move(f));
    }
    return out;
}

double afp(const Grid& pred, const Grid& target, const FeatureExtractor& extractor) {
    require_same_shape(pred.shape(), target.shape(), "afp");
    const auto fp = extractor.features(pred);
    const auto ft = extractor.features(target);
    if (fp.empty() || fp.size() != ft.size()) {
        fail(Errc::extractor_shape_mismatch, "extractor returned " + std::to_string(fp.size()) + " and " +
                                                 std::to_string(ft.size()) + " feature grids");
    }
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t m = 0; m < fp.size(); ++m) {
        if (fp[m].shape() != ft[m].shape()) {
            fail(Errc::extractor_shape_mismatch, "feature grid " + std::to_string(m) + " differs in shape");
        }
        for (std::size_t n = 0; n < fp[m].size(); ++n) {
            acc += std::abs(fp[m][n] - ft[m][n]);
        }
        count += fp[m].size();
    }
    require(count > 0, Errc::extractor_shape_mismatch, "extractor produced empty feature grids");
    return acc / static_cast<double>(count);
}

std::optional<double> LossReport::value(std::string_view name) const {
    for (const auto& t : terms) {
        if (t.name == name) {
            return t.value;
        }
    }
    return std::nullopt;
}

LossReport composite_brats(const Grid& pred, const Grid& target, double vlb, const LossWeights& w,
                           const SsimOptions& ssim) {
    require(w.phase == LossPhase::brats_single_phase, Errc::phase_mismatch,
            "composite_brats requires the single BraTS phase");
    check_weights(w);
    return finish({
        {"mae", mae(pred, target), 1.0},
        {"mse", mse(pred, target), 1.0},
        {"ssim_loss", 1.0 - ssim3(pred, target, ssim), 1.0},
        {"vlb", vlb, w.lambda1},
    });
}

LossReport composite_synthrad(const Grid& pred, const Grid& target, double vlb, const Grid& v_raw,
                              const LossWeights& w, const FeatureExtractor& extractor) {
    check_weights(w);
    if (w.phase == LossPhase::synthrad_phase1) {
        require_same_shape(v_raw.shape(), pred.shape(), "composite_synthrad v_raw");
        double sq = 0.0;
        for (double v : v_raw) {
            sq += v * v;
        }
        return finish({
            {"mae", mae(pred, target), 1.0},
            {"var_penalty", sq / static_cast<double>(v_raw.size()), w.var_penalty},
            {"vlb", vlb, w.lambda1},
        });
    }
    if (w.phase == LossPhase::synthrad_phase2) {
        return finish({
            {"mae", mae(pred, target), 1.0},
            {"afp", afp(pred, target, extractor), w.lambda2},
            {"vlb", vlb, w.lambda1},
        });
    }
    fail(Errc::phase_mismatch, "composite_synthrad requires a SynthRAD phase");
}

double cosine_lr(std::size_t epoch, std::size_t total_epochs, double lr0, double lr_min) {
    require(total_epochs > 0, Errc::epoch_out_of_range, "total_epochs must be positive");
    if (epoch > total_epochs) {
        fail(Errc::epoch_out_of_range,
             "epoch " + std::to_string(epoch) + " beyond " + std::to_string(total_epochs));
    }
    if (epoch == 0) {
        return lr0;
    }
    if (epoch == total_epochs) {
        return lr_min;
    }
    const double progress = static_cast<double>(epoch) / static_cast<double>(total_epochs);
    return lr_min + 0.5 * (lr0 - lr_min) * (1.0 + std::cos(std::numbers::pi * progress));
}

}  // namespace vsddpm
