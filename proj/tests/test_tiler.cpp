#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "vsddpm/error.hpp"
#include "vsddpm/planner.hpp"
#include "vsddpm/tiler.hpp"

using namespace vsddpm;

namespace {

Shape3 random_shape(std::mt19937_64& gen, std::size_t lo, std::size_t hi) {
    std::uniform_int_distribution<std::size_t> e(lo, hi);
    return {e(gen), e(gen), e(gen)};
}

Shape3 random_window(std::mt19937_64& gen, const Shape3& I) {
    Shape3 R{};
    for (int d = 0; d < 3; ++d) {
        R[d] = std::uniform_int_distribution<std::size_t>(1, I[d])(gen);
    }
    return R;
}

}  // namespace

TEST_CASE("single window and reference-scale plan") {
    const auto one = make_plan({16, 16, 16}, {16, 16, 16}, 0.5);
    REQUIRE(one.size() == 1);
    CHECK(one.offsets[0] == Index3{0, 0, 0});

    const auto p = make_plan({256, 256, 128}, {128, 128, 32}, 0.5);
    CHECK(p.size() == 63);
    const auto cov = coverage(p);
    CHECK(*std::min_element(cov.begin(), cov.end()) >= 1);
    std::size_t total = 0;
    for (auto c : cov) {
        total += c;
    }
    CHECK(total == 63ul * 128 * 128 * 32);
    for (int d = 0; d < 3; ++d) {
        std::size_t hi = 0;
        for (const auto& o : p.offsets) {
            hi = std::max(hi, o[d]);
        }
        CHECK(hi == p.volume[d] - p.window[d]);
    }
}

TEST_CASE("offset count matches the window-count formula on random cases") {
    std::mt19937_64 gen(500);
    std::uniform_real_distribution<double> overlap(0.0, 0.95);
    for (int trial = 0; trial < 500; ++trial) {
        const Shape3 I = random_shape(gen, 1, 120);
        const Shape3 R = random_window(gen, I);
        const double p = overlap(gen);
        const auto plan = make_plan(I, R, p);
        CHECK(plan.size() == n_windows(I, R, p));
        for (const auto& o : plan.offsets) {
            for (int d = 0; d < 3; ++d) {
                CHECK(o[d] + R[d] <= I[d]);
            }
        }
        for (int d = 0; d < 3; ++d) {
            const auto off = axis_offsets(I[d], R[d], p);
            CHECK(std::is_sorted(off.begin(), off.end()));
            CHECK(off.front() == 0);
            CHECK(off.back() == I[d] - R[d]);
            // Integer strides of at least one voxel never collide.
            if (static_cast<double>(R[d]) * (1.0 - p) >= 1.0) {
                CHECK(std::set<std::size_t>(off.begin(), off.end()).size() == off.size());
            }
        }
    }
}

TEST_CASE("coverage: everywhere at least once, overlap zones at least twice") {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> overlap(0.5, 0.9);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t I = std::uniform_int_distribution<std::size_t>(2, 200)(gen);
        const std::size_t R = std::uniform_int_distribution<std::size_t>(2, I)(gen);
        const double p = overlap(gen);
        const auto off = axis_offsets(I, R, p);
        std::vector<int> cov(I, 0);
        for (auto o : off) {
            for (std::size_t x = o; x < o + R; ++x) {
                ++cov[x];
            }
        }
        CHECK(*std::min_element(cov.begin(), cov.end()) >= 1);
        if (off.size() >= 2) {
            for (std::size_t x = off[1]; x < off[off.size() - 2] + R; ++x) {
                CHECK(cov[x] >= 2);
            }
        }
    }
}

TEST_CASE("extract matches direct indexing") {
    std::mt19937_64 gen(1);
    const Grid g = oracle::random_grid({13, 11, 9}, gen);
    const auto plan = make_plan(g.shape(), {5, 6, 4}, 0.6);
    for (std::size_t k = 0; k < plan.size(); ++k) {
        const Grid w = extract(g, plan, k);
        const Index3& o = plan.offsets[k];
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 6; ++j) {
                for (std::size_t l = 0; l < 4; ++l) {
                    CHECK(w(i, j, l) == g(o[0] + i, o[1] + j, o[2] + l));
                }
            }
        }
    }
    try {
        extract(g, plan, plan.size());
        FAIL("expected IndexOutOfRange");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::index_out_of_range);
    }
    const Grid constant({13, 11, 9}, 0.25);
    for (double x : extract(constant, plan, 3)) {
        CHECK(x == 0.25);
    }
}

TEST_CASE("stitch of extracted windows is the identity") {
    std::mt19937_64 gen(100);
    std::uniform_real_distribution<double> overlap(0.5, 0.9);
    for (int trial = 0; trial < 100; ++trial) {
        const Shape3 I = random_shape(gen, 4, 40);
        const Shape3 R = random_window(gen, I);
        const double p = overlap(gen);
        const Grid g = oracle::random_grid(I, gen);
        for (WeightMode mode : {WeightMode::uniform, WeightMode::cosine_taper}) {
            const auto plan = make_plan(I, R, p, mode);
            std::vector<Grid> outs;
            for (std::size_t k = 0; k < plan.size(); ++k) {
                outs.push_back(extract(g, plan, k));
            }
            const Grid back = stitch(outs, plan);
            double worst = 0.0;
            for (std::size_t n = 0; n < g.size(); ++n) {
                worst = std::max(worst, std::abs(back[n] - g[n]));
            }
            CHECK(worst <= 1e-12);
        }
    }
}

TEST_CASE("stitch arithmetic") {
    SUBCASE("constant outputs") {
        const auto plan = make_plan({20, 17, 9}, {8, 8, 8}, 0.7);
        const std::vector<Grid> outs(plan.size(), Grid({8, 8, 8}, 0.3));
        for (double x : stitch(outs, plan)) {
            CHECK(x == 0.3);
        }
    }
    SUBCASE("two windows with 0 and 1 under uniform weights") {
        const auto plan = make_plan({6, 1, 1}, {4, 1, 1}, 0.5, WeightMode::uniform);
        REQUIRE(plan.size() == 2);
        const std::vector<Grid> outs{Grid({4, 1, 1}, 0.0), Grid({4, 1, 1}, 1.0)};
        const Grid g = stitch(outs, plan);
        const double expect[6] = {0.0, 0.0, 0.5, 0.5, 1.0, 1.0};
        for (std::size_t x = 0; x < 6; ++x) {
            CHECK(g[x] == expect[x]);
        }
    }
    SUBCASE("count mismatch") {
        const auto plan = make_plan({6, 1, 1}, {4, 1, 1}, 0.5);
        try {
            stitch(std::vector<Grid>{Grid({4, 1, 1})}, plan);
            FAIL("expected CountMismatch");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::count_mismatch);
        }
    }
}

TEST_CASE("taper weights") {
    const Grid w = window_weights({8, 5, 1}, WeightMode::cosine_taper);
    for (double x : w) {
        CHECK(x >= taper_floor * taper_floor * taper_floor);
        CHECK(x <= 1.0);
    }
    CHECK(w(0, 0, 0) == doctest::Approx(w(7, 4, 0)));
    for (double x : window_weights({3, 3, 3}, WeightMode::uniform)) {
        CHECK(x == 1.0);
    }
}

TEST_CASE("patch sampling") {
    const Volume v(Grid({6, 5, 4}, 0.1), {1, 1, 1}, Domain::norm_sym);
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        CHECK(sample_patch(v, {6, 5, 4}, rng).origin == Index3{0, 0, 0});
    }
    Rng a(42), b(42);
    CHECK(sample_patch(v, {2, 2, 2}, a).origin == sample_patch(v, {2, 2, 2}, b).origin);
    CHECK_THROWS_AS(sample_patch(v, {7, 1, 1}, rng), Error);

    // Frequency oracle: 4·3·2 = 24 cells, 10⁴ draws, χ² with 23 degrees of freedom.
    std::mt19937_64 gen(5);
    const Volume noise(oracle::random_grid({6, 5, 4}, gen), {1, 1, 1}, Domain::norm_sym);
    std::vector<int> counts(24, 0);
    Rng draw(11);
    for (int i = 0; i < 10000; ++i) {
        const auto patch = sample_patch(noise, {3, 3, 3}, draw);
        const auto& o = patch.origin;
        ++counts[(o[0] * 3 + o[1]) * 2 + o[2]];
        CHECK(oracle::identical(patch.data, extract_at(noise.grid(), o, {3, 3, 3})));
    }
    const double expected = 10000.0 / 24.0;
    double chi2 = 0.0;
    for (int c : counts) {
        chi2 += (c - expected) * (c - expected) / expected;
    }
    CHECK(chi2 < 49.73);  // 0.999 quantile
}
