#pragma once

#include <cstdint>
#include <random>

namespace vsddpm {

/// SplitMix64 finalizer; used to derive independent substream seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seedable deterministic generator: std::mt19937_64 with a Box-Muller normal
/// source, so streams are reproducible across standard library vendors.
/// Substreams for (seed, index) pairs are seeded by hashing both values,
/// which keeps per-window sampling independent of scheduling order.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(mix64(seed)) {}

    std::uint64_t seed() const noexcept { return seed_; }

    /// Independent generator for substream `index` of this generator's seed.
    Rng substream(std::uint64_t index) const { return Rng(mix64(seed_ ^ mix64(index + 0x9E3779B97F4A7C15ULL))); }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer on [0, n); n must be positive.
    std::uint64_t uniform_int(std::uint64_t n);

    double normal();

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace vsddpm
