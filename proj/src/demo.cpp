#include "vsddpm/demo.hpp"

#include <algorithm>
#include <cmath>

#include "vsddpm/error.hpp"
#include "vsddpm/pipeline.hpp"
#include "vsddpm/schedule.hpp"
#include "vsddpm/serialize.hpp"
#include "vsddpm/tiler.hpp"

namespace vsddpm {

namespace {

// Per-window residual moments are estimated from ~3·10^5 voxels; a 6% band on
// the std and 0.1σ on the mean sit far outside sampling error.
constexpr double std_rel_tol = 0.06;
constexpr double mean_tol_sigmas = 0.1;

DemoCheck check(std::string name, double value, const char* relation, double limit) {
    const std::string rel = relation;
    bool pass = false;
    if (rel == "==") {
        pass = value == limit;
    } else if (rel == "<=") {
        pass = value <= limit;
    } else {
        pass = value >= limit;
    }
    return {std::move(name), value, limit, rel, pass};
}

}  // namespace

bool DemoResult::passed() const {
    for (const auto& c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return !checks.empty();
}

Volume demo_phantom(const Shape3& shape, const Spacing3& spacing) {
    struct Blob {
        double ci, cj, ck, radius_mm, weight;
    };
    const Blob blobs[] = {
        {0.35, 0.40, 0.50, 7.0, 1.0},
        {0.65, 0.55, 0.40, 5.0, 0.8},
        {0.50, 0.75, 0.60, 4.0, -0.6},
        {0.25, 0.70, 0.35, 3.0, 0.5},
    };
    Grid g(shape);
    for (std::size_t i = 0; i < shape[0]; ++i) {
        for (std::size_t j = 0; j < shape[1]; ++j) {
            for (std::size_t k = 0; k < shape[2]; ++k) {
                double v = 0.0;
                for (const auto& b : blobs) {
                    const double di = (static_cast<double>(i) - b.ci * static_cast<double>(shape[0])) * spacing[0];
                    const double dj = (static_cast<double>(j) - b.cj * static_cast<double>(shape[1])) * spacing[1];
                    const double dk = (static_cast<double>(k) - b.ck * static_cast<double>(shape[2])) * spacing[2];
                    v += b.weight * std::exp(-(di * di + dj * dj + dk * dk) / (2.0 * b.radius_mm * b.radius_mm));
                }
                g(i, j, k) = v;
            }
        }
    }
    const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
    const double a = *lo, b = *hi;
    for (double& x : g) {
        x = -0.6 + 1.2 * (x - a) / (b - a);
    }
    return Volume(std::move(g), spacing, Domain::norm_sym);
}

DemoResult run_demo(const DemoOptions& opt) {
    DemoResult r;
    const StepSet trained = default_step_set();
    r.plan = plan(opt.shape, opt.window, opt.hardware, trained);
    r.steps_used = opt.steps.value_or(r.plan.t_selected);

    SamplerConfig cfg;
    cfg.steps = r.steps_used;
    cfg.seed = opt.seed;
    validate(cfg, trained);

    const Volume phantom = demo_phantom(opt.shape, opt.spacing);
    const NoiseSchedule s = respace(linear_base_schedule(), r.steps_used);
    const WindowPlan tiling = make_plan(opt.shape, opt.window, r.plan.overlap_final);
    const auto denoiser = GaussianAnalyticDenoiser::conditional(opt.sigma);
    const Grid condition[] = {phantom.grid()};
    const TiledSample out = sample_tiled(denoiser, condition, tiling, cfg, s, opt.threads);

    double sum = 0.0, sq = 0.0;
    std::size_t n = 0;
    for (std::size_t w = 0; w < tiling.size(); ++w) {
        const Grid c = extract(phantom.grid(), tiling, w);
        for (std::size_t v = 0; v < c.size(); ++v) {
            const double d = out.windows[w][v] - c[v];
            sum += d;
            sq += d * d;
            ++n;
        }
    }
    r.residual_mean = sum / static_cast<double>(n);
    r.residual_std = std::sqrt(sq / static_cast<double>(n) - r.residual_mean * r.residual_mean);

    const Volume stitched = phantom.with_grid(out.stitched);
    MetricsConfig mc;
    mc.seg_threshold = 0.0;
    r.metrics = report(stitched, phantom, {}, mc);

    const std::size_t expected_windows = tiling.size();
    r.checks.push_back(check("plan_windows_match_tiling", static_cast<double>(r.plan.n_windows), "==",
                             static_cast<double>(expected_windows)));
    r.checks.push_back(check("plan_runtime_within_budget", r.plan.est_runtime_s, "<=", opt.hardware.total_budget_s));
    r.checks.push_back(check("plan_steps_trained", trained.contains(r.plan.t_selected) ? 1.0 : 0.0, "==", 1.0));
    r.checks.push_back(check("residual_mean_abs", std::abs(r.residual_mean), "<=", mean_tol_sigmas * opt.sigma));
    r.checks.push_back(
        check("residual_std_rel_error", std::abs(r.residual_std - opt.sigma) / opt.sigma, "<=", std_rel_tol));
    // Blending averages independent draws, so the stitched error cannot exceed one draw's.
    const double mse_limit = std::pow(opt.sigma * (1.0 + std_rel_tol), 2);
    r.checks.push_back(check("stitched_mse", *r.metrics.mse, "<=", mse_limit));
    r.checks.push_back(check("stitched_psnr_db", *r.metrics.psnr_db, ">=", 10.0 * std::log10(4.0 / mse_limit)));

    if (opt.fit_linear) {
        std::vector<Grid> dataset;
        for (std::size_t w = 0; w < tiling.size(); ++w) {
            dataset.push_back(out.windows[w]);
        }
        r.linear = fit_linear_denoiser(dataset, s, Rng(opt.seed).substream(tiling.size()));
    }
    return r;
}

nlohmann::json demo_json(const DemoResult& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name}, {"value", c.value}, {"relation", c.relation}, {"limit", c.limit},
                          {"pass", c.pass}});
    }
    return json{{"plan", r.plan},
                {"steps_used", r.steps_used},
                {"residual_mean", r.residual_mean},
                {"residual_std", r.residual_std},
                {"metrics", r.metrics},
                {"checks", checks},
                {"pass", r.passed()}};
}

}  // namespace vsddpm
