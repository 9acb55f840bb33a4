#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vsddpm/error.hpp"
#include "vsddpm/normalize.hpp"

using namespace vsddpm;

namespace {

Volume hu_volume(std::vector<double> values) {
    const Shape3 s{values.size(), 1, 1};
    return Volume(s, {1, 1, 1}, std::move(values), Domain::hu);
}

Volume random_mri(std::mt19937_64& gen, std::size_t n = 1000) {
    std::gamma_distribution<double> body(4.0, 60.0);
    std::vector<double> v(n);
    for (double& x : v) {
        x = body(gen);
    }
    // Planted outliers on both tails.
    v[3] = 1e5;
    v[17] = -3e4;
    v[n / 2] = 2e5;
    return Volume(Shape3{n, 1, 1}, {1, 1, 1}, std::move(v), Domain::mri_raw);
}

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an exception");
    return Errc::invalid_argument;
}

}  // namespace

TEST_CASE("ct endpoints and clamping") {
    const auto [n, stats] = ct_normalize(hu_volume({-1000, 1600, 300, 5000, -3000}));
    CHECK(n.domain() == Domain::norm_sym);
    CHECK(n.values()[0] == -1.0);
    CHECK(n.values()[1] == 1.0);
    CHECK(n.values()[2] == 0.0);
    CHECK(n.values()[3] == 1.0);
    CHECK(n.values()[4] == -1.0);
    CHECK(stats.mode == NormMode::ct);

    const Volume back = ct_denormalize(Volume(Shape3{3, 1, 1}, {1, 1, 1}, {-1.0, 1.0, 0.0}, Domain::norm_sym));
    CHECK(back.values()[0] == -1000.0);
    CHECK(back.values()[1] == 1600.0);
    CHECK(back.values()[2] == 300.0);
    CHECK(code_of([] { ct_normalize(Volume(Shape3{1, 1, 1}, {1, 1, 1}, {0.0}, Domain::mri_raw)); }) ==
          Errc::domain_mismatch);
}

TEST_CASE("ct round trip and idempotence") {
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> u(-1500, 2500);
    std::vector<double> values(5000);
    for (double& x : values) {
        x = u(gen);
    }
    const Volume v = hu_volume(values);
    const auto first = ct_normalize(v).first;
    const Volume back = ct_denormalize(first);
    for (std::size_t n = 0; n < v.size(); ++n) {
        CHECK(std::abs(back.values()[n] - std::clamp(values[n], -1000.0, 1600.0)) <= 1e-10);
    }
    const auto again = ct_normalize(back).first;
    for (std::size_t n = 0; n < v.size(); ++n) {
        CHECK(std::abs(again.values()[n] - first.values()[n]) <= 1e-12);
    }
}

TEST_CASE("mri percentiles match a full-sort oracle") {
    std::mt19937_64 gen(200);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(10, 3000)(gen);
        const Volume v = random_mri(gen, n);
        const auto [out, stats] = mri_normalize(v, NormMode::mri_per_case);
        const std::vector<double> raw(v.values().begin(), v.values().end());
        CHECK(std::abs(stats.clip_lo - oracle::percentile_sorted(raw, 0.1)) <= 1e-12 * std::abs(stats.clip_lo));
        CHECK(std::abs(stats.clip_hi - oracle::percentile_sorted(raw, 99.9)) <= 1e-12 * std::abs(stats.clip_hi));
        const auto [lo, hi] = std::minmax_element(out.values().begin(), out.values().end());
        CHECK(*lo == -1.0);
        CHECK(*hi == 1.0);
    }
}

TEST_CASE("mri round trip and bound recomputation") {
    std::mt19937_64 gen(31);
    for (NormMode mode : {NormMode::mri_per_case, NormMode::mri_nonzero_masked}) {
        const Volume v = random_mri(gen);
        const auto [out, stats] = mri_normalize(v, mode);
        CHECK(stats.mode == mode);
        const Volume back = mri_denormalize(out, stats);
        double worst = 0.0;
        for (std::size_t n = 0; n < v.size(); ++n) {
            worst = std::max(worst, std::abs(back.values()[n] - std::clamp(v.values()[n], stats.clip_lo, stats.clip_hi)));
        }
        CHECK(worst <= 1e-9);
        const auto [lo, hi] = std::minmax_element(back.values().begin(), back.values().end());
        CHECK(std::abs(*lo - stats.clip_lo) <= 1e-9);
        CHECK(std::abs(*hi - stats.clip_hi) <= 1e-9);
    }
}

TEST_CASE("mri statistics sources") {
    std::mt19937_64 gen(8);
    const Volume v = random_mri(gen, 400);
    SUBCASE("per case z-score uses the clipped volume") {
        const auto [out, stats] = mri_normalize(v, NormMode::mri_per_case);
        std::vector<double> c(v.values().begin(), v.values().end());
        double m = 0.0;
        for (double& x : c) {
            x = std::clamp(x, stats.clip_lo, stats.clip_hi);
            m += x;
        }
        m /= static_cast<double>(c.size());
        CHECK(stats.mean == doctest::Approx(m).epsilon(1e-12));
        CHECK(stats.std > 0.0);
    }
    SUBCASE("global takes external values") {
        NormStats ext;
        ext.mean = 100.0;
        ext.std = 50.0;
        const auto [out, stats] = mri_normalize(v, NormMode::mri_global, ext);
        CHECK(stats.mean == 100.0);
        CHECK(stats.std == 50.0);
        CHECK(code_of([&] { mri_normalize(v, NormMode::mri_global); }) == Errc::missing_global_stats);
        ext.std = 0.0;
        CHECK(code_of([&] { mri_normalize(v, NormMode::mri_global, ext); }) == Errc::zero_std);
    }
    SUBCASE("nonzero masked ignores zeros and voxels outside the region") {
        std::vector<double> vals(8, 0.0);
        vals[1] = 10.0;
        vals[2] = 20.0;
        vals[5] = 1000.0;
        const Volume w(Shape3{8, 1, 1}, {1, 1, 1}, vals, Domain::mri_raw);
        std::vector<std::uint8_t> bits{1, 1, 1, 1, 0, 0, 0, 0};
        const Mask region(Shape3{8, 1, 1}, {1, 1, 1}, bits);
        const auto [out, stats] = mri_normalize(w, NormMode::mri_nonzero_masked, std::nullopt, &region);
        const std::vector<double> raw(vals);
        const double lo = oracle::percentile_sorted(raw, 0.1);
        const double hi = oracle::percentile_sorted(raw, 99.9);
        const double a = std::clamp(10.0, lo, hi), b = std::clamp(20.0, lo, hi);
        CHECK(stats.mean == doctest::Approx((a + b) / 2.0).epsilon(1e-12));
        CHECK(stats.std == doctest::Approx(std::abs(a - b) / 2.0).epsilon(1e-12));

        const Mask zeros_only(Shape3{8, 1, 1}, {1, 1, 1}, {1, 0, 0, 1, 1, 0, 1, 1});
        CHECK(code_of([&] { mri_normalize(w, NormMode::mri_nonzero_masked, std::nullopt, &zeros_only); }) ==
              Errc::empty_stats_region);
    }
}

TEST_CASE("mri errors") {
    const Volume constant(Shape3{10, 1, 1}, {1, 1, 1}, std::vector<double>(10, 7.0), Domain::mri_raw);
    CHECK(code_of([&] { mri_normalize(constant, NormMode::mri_per_case); }) == Errc::zero_std);
    CHECK(code_of([] { mri_normalize(Volume(Shape3{1, 1, 1}, {1, 1, 1}, {0.0}, Domain::hu), NormMode::mri_per_case); }) ==
          Errc::domain_mismatch);

    NormStats bad;
    bad.mode = NormMode::mri_per_case;
    bad.std = 0.0;
    bad.post_min = -1.0;
    bad.post_max = 1.0;
    const Volume n(Shape3{1, 1, 1}, {1, 1, 1}, {0.0}, Domain::norm_sym);
    CHECK(code_of([&] { mri_denormalize(n, bad); }) == Errc::stats_mismatch);
}

TEST_CASE("mode names") {
    for (NormMode m : {NormMode::ct, NormMode::mri_global, NormMode::mri_per_case, NormMode::mri_nonzero_masked}) {
        CHECK(parse_norm_mode(norm_mode_name(m)) == m);
    }
    CHECK_FALSE(parse_norm_mode("zscore").has_value());
}

TEST_CASE("post-processing floor") {
    const Volume v(Shape3{4, 1, 1}, {1, 1, 1}, {0.005, 0.011, 0.01, 0.9}, Domain::norm_unit);
    const Volume f = postprocess_floor(v);
    CHECK(f.values()[0] == 0.0);
    CHECK(f.values()[1] == 0.011);
    CHECK(f.values()[2] == 0.01);
    CHECK(f.values()[3] == 0.9);
    const Volume same = postprocess_floor(v, 0.0);
    CHECK(std::equal(same.values().begin(), same.values().end(), v.values().begin()));
    CHECK(code_of([] { postprocess_floor(Volume(Shape3{1, 1, 1}, {1, 1, 1}, {0.0}, Domain::norm_sym)); }) ==
          Errc::domain_mismatch);
}

TEST_CASE("symmetric and unit domains") {
    const Volume s(Shape3{3, 1, 1}, {1, 1, 1}, {-1.0, 0.0, 1.0}, Domain::norm_sym);
    const Volume u = sym_to_unit(s);
    CHECK(u.domain() == Domain::norm_unit);
    CHECK(u.values()[0] == 0.0);
    CHECK(u.values()[1] == 0.5);
    CHECK(u.values()[2] == 1.0);
    const Volume back = unit_to_sym(u);
    CHECK(std::equal(back.values().begin(), back.values().end(), s.values().begin()));
}
