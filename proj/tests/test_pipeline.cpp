#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "vsddpm/demo.hpp"
#include "vsddpm/denoiser.hpp"
#include "vsddpm/diffusion.hpp"
#include "vsddpm/pipeline.hpp"

using namespace vsddpm;

namespace {

struct ThrowingDenoiser final : Denoiser {
    ModelOutput predict(const Grid&, double, std::size_t, const NoiseSchedule&, std::span<const Grid>) const override {
        throw std::runtime_error("model failure");
    }
};

}  // namespace

TEST_CASE("tiled sampling does not depend on the thread count") {
    std::mt19937_64 gen(3);
    const Grid cond = oracle::random_grid({20, 18, 12}, gen, -0.5, 0.5);
    const auto plan = make_plan(cond.shape(), {8, 8, 8}, 0.5);
    const auto s = respace(linear_base_schedule(), 10);
    const auto den = GaussianAnalyticDenoiser::conditional(0.1);
    SamplerConfig cfg;
    cfg.steps = 10;
    cfg.seed = 99;
    const Grid c[] = {cond};
    const auto one = sample_tiled(den, c, plan, cfg, s, 1);
    const auto three = sample_tiled(den, c, plan, cfg, s, 3);
    REQUIRE(one.windows.size() == plan.size());
    CHECK(oracle::identical(one.stitched, three.stitched));
    for (std::size_t k = 0; k < plan.size(); ++k) {
        CHECK(oracle::identical(one.windows[k], three.windows[k]));
    }
    // Each window equals a standalone run on its crop with substream k.
    const Grid crop = extract(cond, plan, 2);
    const Grid crops[] = {crop};
    Rng rng = Rng(cfg.seed).substream(2);
    CHECK(oracle::identical(sample(den, crops, plan.window, cfg, s, rng), one.windows[2]));
}

TEST_CASE("window failures reach the caller") {
    const auto plan = make_plan({8, 8, 8}, {4, 4, 4}, 0.5);
    const auto s = respace(linear_base_schedule(), 5);
    SamplerConfig cfg;
    cfg.steps = 5;
    CHECK_THROWS_AS(sample_tiled(ThrowingDenoiser{}, {}, plan, cfg, s, 2), std::runtime_error);
}

TEST_CASE("demo passes its checks and is reproducible") {
    DemoOptions opt;
    const auto a = run_demo(opt);
    for (const auto& c : a.checks) {
        CAPTURE(c.name);
        CHECK(c.pass);
    }
    CHECK(a.passed());
    CHECK(a.steps_used == a.plan.t_selected);
    opt.threads = 2;
    const auto b = run_demo(opt);
    CHECK(demo_json(a) == demo_json(b));
}
