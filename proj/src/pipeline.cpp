#include "vsddpm/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "vsddpm/error.hpp"

namespace vsddpm {

std::size_t default_thread_count() {
    if (const char* env = std::getenv("VSDDPM_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n > 0) {
                return static_cast<std::size_t>(n);
            }
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

TiledSample sample_tiled(const Denoiser& denoiser, std::span<const Grid> condition, const WindowPlan& plan,
                         const SamplerConfig& cfg, const NoiseSchedule& s, std::size_t threads) {
    for (const auto& c : condition) {
        require_same_shape(c.shape(), plan.volume, "tiled condition");
    }
    const Rng root(cfg.seed);
    std::vector<Grid> windows(plan.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (std::size_t k = next++; k < plan.size(); k = next++) {
            try {
                std::vector<Grid> crops;
                crops.reserve(condition.size());
                for (const auto& c : condition) {
                    crops.push_back(extract(c, plan, k));
                }
                Rng rng = root.substream(k);
                windows[k] = sample(denoiser, crops, plan.window, cfg, s, rng);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = plan.size();
            }
        }
    };

    const std::size_t n_threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(plan.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < n_threads; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
    Grid stitched = stitch(windows, plan);
    return {std::move(stitched), std::move(windows)};
}

}  // namespace vsddpm
