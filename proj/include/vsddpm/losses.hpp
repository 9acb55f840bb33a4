#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsddpm/grid.hpp"
#include "vsddpm/ssim.hpp"

namespace vsddpm {

double mae(const Grid& pred, const Grid& target);
double mse(const Grid& pred, const Grid& target);

/// Maps a volume to one or more feature grids for the anatomical feature loss.
class FeatureExtractor {
public:
    virtual ~FeatureExtractor() = default;
    virtual std::vector<Grid> features(const Grid& x) const = 0;
};

class IdentityExtractor final : public FeatureExtractor {
public:
    std::vector<Grid> features(const Grid& x) const override { return {x}; }
};

/// Two-layer random convolutional pyramid with weights fixed by a seed:
/// `channels` 3×3×3 ReLU filters at full resolution, then 2× average pooling
/// and `channels` 3×3×3 ReLU filters over all first-layer maps. Borders
/// replicate the edge voxel.
class RandomConvExtractor final : public FeatureExtractor {
public:
    explicit RandomConvExtractor(std::uint64_t seed = 20250, std::size_t channels = 4);

    std::vector<Grid> features(const Grid& x) const override;

    std::size_t channels() const noexcept { return channels_; }
    /// Layer-1 taps for channel c (27 values, index (di*3+dj)*3+dk).
    const std::vector<double>& layer1(std::size_t c) const { return layer1_[c]; }
    /// Layer-2 taps for output channel c and input channel m.
    const std::vector<double>& layer2(std::size_t c, std::size_t m) const { return layer2_[c * channels_ + m]; }

private:
    std::size_t channels_;
    std::vector<std::vector<double>> layer1_;
    std::vector<std::vector<double>> layer2_;
};

/// Mean absolute difference over the concatenated feature grids.
double afp(const Grid& pred, const Grid& target, const FeatureExtractor& extractor);

enum class LossPhase { brats_single_phase, synthrad_phase1, synthrad_phase2 };

struct LossWeights {
    double lambda1 = 0.001;       // variational bound
    double lambda2 = 0.2;         // anatomical feature loss
    double var_penalty = 0.0001;  // squared variance coefficient, first SynthRAD phase
    LossPhase phase = LossPhase::brats_single_phase;
};

struct LossTerm {
    std::string name;
    double value = 0.0;
    double weight = 1.0;
};

struct LossReport {
    std::vector<LossTerm> terms;
    double total = 0.0;

    std::optional<double> value(std::string_view name) const;
};

/// mae + mse + (1 - ssim) + lambda1·vlb.
LossReport composite_brats(const Grid& pred, const Grid& target, double vlb, const LossWeights& w,
                           const SsimOptions& ssim = {});

/// Phase 1: mae + var_penalty·mean(v_raw²) + lambda1·vlb.
/// Phase 2: mae + lambda2·afp + lambda1·vlb.
LossReport composite_synthrad(const Grid& pred, const Grid& target, double vlb, const Grid& v_raw,
                              const LossWeights& w, const FeatureExtractor& extractor);

/// Cosine decay from lr0 at epoch 0 to lr_min at total_epochs.
double cosine_lr(std::size_t epoch, std::size_t total_epochs, double lr0 = 2e-5, double lr_min = 1e-6);

}  // namespace vsddpm
