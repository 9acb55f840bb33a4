#include <doctest.h>

#include <cmath>

#include "vsddpm/error.hpp"
#include "vsddpm/schedule.hpp"

using namespace vsddpm;

TEST_CASE("two-step base schedule by hand") {
    const auto s = linear_base_schedule(2, 0.1, 0.2);
    REQUIRE(s.steps() == 2);
    CHECK(s.betas[0] == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(s.betas[1] == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(s.alpha_bars[0] == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(s.alpha_bars[1] == doctest::Approx(0.72).epsilon(1e-15));
}

TEST_CASE("one-step base schedule") {
    const auto s = linear_base_schedule(1, 0.1, 0.1);
    REQUIRE(s.steps() == 1);
    CHECK(s.alpha_bars[0] == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("invalid beta ranges") {
    CHECK_THROWS_AS(linear_base_schedule(10, 1e-4, 1.2), Error);
    CHECK_THROWS_AS(linear_base_schedule(10, 0.0, 0.02), Error);
    CHECK_THROWS_AS(linear_base_schedule(10, 0.03, 0.02), Error);
    try {
        linear_base_schedule(10, 1e-4, 1.2);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_beta_range);
    }
}

TEST_CASE("base schedule invariants") {
    const auto s = linear_base_schedule();
    REQUIRE(s.steps() == 1000);
    double prod = 1.0;
    for (std::size_t t = 0; t < s.steps(); ++t) {
        prod *= 1.0 - s.betas[t];
        CHECK(std::abs(s.alpha_bars[t] - prod) <= 1e-12 * prod);
        CHECK(s.betas[t] > 0.0);
        CHECK(s.betas[t] < 1.0);
        CHECK(s.posterior_variance[t] <= s.betas[t]);
        if (t > 0) {
            CHECK(s.alpha_bars[t] < s.alpha_bars[t - 1]);
        }
    }
    CHECK(s.posterior_variance[0] == 0.0);
    CHECK(s.betas.front() == doctest::Approx(1e-4).epsilon(1e-14));
    CHECK(s.betas.back() == doctest::Approx(0.02).epsilon(1e-14));
}

TEST_CASE("identity respacing reproduces the base") {
    const auto base = linear_base_schedule();
    const auto s = respace(base, 1000);
    for (std::size_t t = 0; t < 1000; ++t) {
        CHECK(std::abs(s.alpha_bars[t] - base.alpha_bars[t]) <= 1e-15);
    }
}

TEST_CASE("respaced alpha-bar equals the cumulative product of respaced betas") {
    const auto base = linear_base_schedule();
    const auto s = respace(base, 25);
    REQUIRE(s.betas.size() == 25);
    double prod = 1.0;
    for (std::size_t k = 0; k < 25; ++k) {
        prod *= 1.0 - s.betas[k];
        const double selected = base.alpha_bars[s.base_indices[k]];
        CHECK(std::abs(prod - selected) <= 1e-12);
    }
    CHECK(s.base_indices.front() == 0);
    CHECK(s.base_indices.back() == 999);
}

TEST_CASE("respacing beyond the base length fails") {
    try {
        respace(linear_base_schedule(), 1001);
        FAIL("expected StepCountTooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::step_count_too_large);
    }
    CHECK_THROWS_AS(respace(linear_base_schedule(), 0), Error);
}

TEST_CASE("every trained step count keeps the final alpha-bar and stays decreasing") {
    const auto base = linear_base_schedule();
    const StepSet trained = default_step_set();
    for (std::size_t T : trained.values()) {
        CAPTURE(T);
        const auto s = respace(base, T);
        CHECK(std::abs(s.alpha_bars.back() - base.alpha_bars.back()) <= 1e-12);
        for (std::size_t t = 1; t < T; ++t) {
            CHECK(s.alpha_bars[t] < s.alpha_bars[t - 1]);
        }
    }
}

TEST_CASE("posterior variance matches direct evaluation for every schedule") {
    const auto base = linear_base_schedule();
    for (std::size_t T : {1ul, 5ul, 25ul, 300ul, 1000ul}) {
        const auto s = T == 1000 ? base : respace(base, T);
        for (std::size_t t = 0; t < s.steps(); ++t) {
            const double prev = t == 0 ? 1.0 : s.alpha_bars[t - 1];
            const double direct = s.betas[t] * (1.0 - prev) / (1.0 - s.alpha_bars[t]);
            CHECK(std::abs(s.posterior_variance[t] - direct) <= 1e-15 + 1e-12 * direct);
            const double c1 = s.betas[t] * std::sqrt(prev) / (1.0 - s.alpha_bars[t]);
            const double c2 = (1.0 - prev) * std::sqrt(s.alphas[t]) / (1.0 - s.alpha_bars[t]);
            CHECK(std::abs(s.posterior_mean_coef1[t] - c1) <= 1e-12);
            CHECK(std::abs(s.posterior_mean_coef2[t] - c2) <= 1e-12);
        }
        if (s.steps() > 1) {
            CHECK(s.log_posterior_variance_clipped[0] == doctest::Approx(std::log(s.posterior_variance[1])));
        }
    }
}

TEST_CASE("default step set") {
    const auto s = default_step_set();
    CHECK(s.size() == 17);
    CHECK(s.min() == 5);
    CHECK(s.max() == 300);
    const std::vector<std::size_t> expected{5, 10, 15, 20, 25, 35, 50, 75, 100, 125, 150, 175, 200, 225, 250, 275, 300};
    CHECK(s.values() == expected);
    for (std::size_t i = 1; i < s.size(); ++i) {
        CHECK(s.values()[i] > s.values()[i - 1]);
    }
    CHECK_THROWS_AS(StepSet({5, 5}), Error);
    CHECK_THROWS_AS(StepSet({}), Error);
}

TEST_CASE("normalized time") {
    const auto s = respace(linear_base_schedule(), 25);
    CHECK(s.normalized_time(0) == 0.0);
    CHECK(s.normalized_time(24) == doctest::Approx(24.0 / 25.0));
}
