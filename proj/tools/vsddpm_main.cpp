#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "json_config.hpp"
#include "vsddpm/augment.hpp"
#include "vsddpm/demo.hpp"
#include "vsddpm/denoiser.hpp"
#include "vsddpm/error.hpp"
#include "vsddpm/io.hpp"
#include "vsddpm/metrics.hpp"
#include "vsddpm/normalize.hpp"
#include "vsddpm/pipeline.hpp"
#include "vsddpm/planner.hpp"
#include "vsddpm/serialize.hpp"
#include "vsddpm/tiler.hpp"

namespace fs = std::filesystem;
using vsddpm::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_infeasible = 2;
constexpr int exit_usage = 64;
constexpr int exit_data = 65;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

vsddpm::Shape3 parse_shape(const std::string& text, const char* what) {
    vsddpm::Shape3 out{};
    std::stringstream ss(text);
    std::string part;
    std::size_t n = 0;
    while (std::getline(ss, part, ',')) {
        if (n == 3) {
            throw UsageError(std::string(what) + " needs exactly three values");
        }
        try {
            std::size_t used = 0;
            const long v = std::stol(part, &used);
            if (used != part.size() || v <= 0) {
                throw UsageError(std::string(what) + " values must be positive integers");
            }
            out[n++] = static_cast<std::size_t>(v);
        } catch (const std::logic_error&) {
            throw UsageError(std::string(what) + " values must be positive integers: '" + text + "'");
        }
    }
    if (n != 3) {
        throw UsageError(std::string(what) + " needs exactly three values");
    }
    return out;
}

std::vector<double> parse_reals(const std::string& text, std::size_t count, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            out.push_back(std::stod(part));
        } catch (const std::logic_error&) {
            throw UsageError(std::string(what) + ": '" + part + "' is not a number");
        }
    }
    if (out.size() != count) {
        throw UsageError(std::string(what) + " needs " + std::to_string(count) + " values");
    }
    return out;
}

vsddpm::StepSet parse_step_set(const std::string& text) {
    if (text.empty()) {
        return vsddpm::default_step_set();
    }
    std::vector<std::size_t> values;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            values.push_back(static_cast<std::size_t>(std::stoul(part)));
        } catch (const std::logic_error&) {
            throw UsageError("--steps: '" + part + "' is not a step count");
        }
    }
    return vsddpm::StepSet(std::move(values));
}

vsddpm::WeightMode parse_weight_mode(const std::string& s) {
    if (s == "uniform") {
        return vsddpm::WeightMode::uniform;
    }
    if (s == "cosine_taper") {
        return vsddpm::WeightMode::cosine_taper;
    }
    throw UsageError("unknown weight mode '" + s + "'");
}

void emit(const json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f || !(f << text)) {
        vsddpm::fail(vsddpm::Errc::io_failure, "cannot write " + out_path);
    }
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        vsddpm::fail(vsddpm::Errc::io_failure, "cannot open " + path);
    }
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        vsddpm::fail(vsddpm::Errc::invalid_argument, path + ": " + e.what());
    }
}

vsddpm::Mask read_mask(const std::string& path) {
    const vsddpm::Volume v = vsddpm::read_volume(path);
    return vsddpm::Mask::from_threshold(v, 0.5);
}

// Median wall time of one reverse step of the analytic denoiser on one window.
double calibrate_latency(const vsddpm::Shape3& window) {
    const auto s = vsddpm::respace(vsddpm::linear_base_schedule(), 5);
    const vsddpm::GaussianAnalyticDenoiser denoiser(0.0, 0.5);
    vsddpm::Rng rng(0);
    vsddpm::Grid x(window);
    for (double& v : x) {
        v = rng.normal();
    }
    vsddpm::SamplerConfig cfg;
    cfg.steps = 5;
    std::vector<double> times;
    for (int rep = 0; rep < 5; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto out = denoiser.predict(x, s.normalized_time(2), 2, s, {});
        x = vsddpm::p_sample_step(out, x, 2, s, rng, cfg);
        times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    std::nth_element(times.begin(), times.begin() + 2, times.end());
    return std::max(times[2], 1e-9);
}

int exit_code_for(vsddpm::Errc code) {
    using vsddpm::Errc;
    switch (code) {
        case Errc::budget_infeasible:
        case Errc::infeasible_at_minimum_overlap:
            return exit_infeasible;
        case Errc::invalid_argument:
        case Errc::invalid_overlap:
        case Errc::window_larger_than_volume:
        case Errc::step_count_too_large:
        case Errc::invalid_beta_range:
        case Errc::angle_out_of_range:
        case Errc::factor_out_of_range:
        case Errc::negative_sigma:
        case Errc::order_too_high:
        case Errc::missing_global_stats:
            return exit_usage;
        default:
            return exit_data;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variable-step diffusion sampling toolkit for 3D volumes"};
    app.config_formatter(std::make_shared<vsddpm::cli::JsonConfig>());
    app.set_config("--config", "", "JSON file with options; nested objects select subcommands");
    app.require_subcommand(1, 1);

    // plan
    std::string plan_shape, plan_window, plan_steps, plan_dump, plan_out;
    double plan_budget = 900.0, plan_latency = 0.433, plan_overlap = vsddpm::min_overlap;
    bool plan_calibrate = false;
    auto* plan_cmd = app.add_subcommand("plan", "Choose a step count and overlap that fit a time budget");
    plan_cmd->add_option("--shape", plan_shape, "Volume shape I as a,b,c")->required();
    plan_cmd->add_option("--window", plan_window, "Window shape R as a,b,c")->required();
    plan_cmd->add_option("--budget", plan_budget, "Total budget in seconds")->capture_default_str();
    plan_cmd->add_option("--latency", plan_latency, "Seconds per step per window")->capture_default_str();
    plan_cmd->add_option("--steps", plan_steps, "Trained step counts (default: the 17-value set)");
    plan_cmd->add_option("--overlap-init", plan_overlap, "Initial overlap")->capture_default_str();
    plan_cmd->add_option("--dump-schedule", plan_dump, "Write the selected respaced schedule as JSON");
    plan_cmd->add_flag("--calibrate", plan_calibrate, "Measure latency with the analytic denoiser instead");
    plan_cmd->add_option("--out", plan_out, "Write the plan here instead of stdout");

    // sample
    std::string sample_cond, sample_out, sample_window = "16,16,16", sample_linear, sample_weight = "cosine_taper";
    std::string sample_report;
    std::optional<std::size_t> sample_steps;
    std::optional<double> sample_overlap;
    double sample_sigma = 0.1, sample_budget = 900.0, sample_latency = 0.433;
    std::uint64_t sample_seed = 0;
    std::size_t sample_threads = vsddpm::default_thread_count();
    bool sample_no_clip = false;
    auto* sample_cmd = app.add_subcommand("sample", "Tiled variable-step sampling conditioned on a volume");
    sample_cmd->add_option("--cond", sample_cond, "Condition volume (norm_sym)")->required();
    sample_cmd->add_option("--out", sample_out, "Output volume path")->required();
    sample_cmd->add_option("--window", sample_window, "Window shape")->capture_default_str();
    sample_cmd->add_option("--overlap", sample_overlap, "Overlap (default: planned)");
    sample_cmd->add_option("--steps", sample_steps, "Step count (default: planned)");
    sample_cmd->add_option("--sigma", sample_sigma, "Analytic denoiser spread around the condition")
        ->capture_default_str();
    sample_cmd->add_option("--linear", sample_linear, "Use a fitted linear denoiser from this JSON file");
    sample_cmd->add_option("--budget", sample_budget, "Budget in seconds")->capture_default_str();
    sample_cmd->add_option("--latency", sample_latency, "Seconds per step per window")->capture_default_str();
    sample_cmd->add_option("--weight-mode", sample_weight, "uniform or cosine_taper")->capture_default_str();
    sample_cmd->add_option("--seed", sample_seed, "Random seed")->capture_default_str();
    sample_cmd->add_option("--threads", sample_threads, "Worker threads (default from VSDDPM_THREADS)");
    sample_cmd->add_flag("--no-clip", sample_no_clip, "Do not clamp predicted x0 to [-1, 1]");
    sample_cmd->add_option("--report", sample_report, "Write the run summary here instead of stdout");

    // metrics
    std::string m_pred, m_gt, m_mask, m_pred_seg, m_gt_seg, m_csv, m_case = "case", m_out, m_hd95 = "pooled";
    std::optional<double> m_range, m_threshold;
    double m_nsd_tol = vsddpm::default_nsd_tolerance_mm;
    std::size_t m_scales = 3;
    bool m_denorm_ct = false;
    auto* metrics_cmd = app.add_subcommand("metrics", "Score a prediction against ground truth");
    metrics_cmd->add_option("--pred", m_pred, "Predicted volume")->required();
    metrics_cmd->add_option("--gt", m_gt, "Ground-truth volume")->required();
    metrics_cmd->add_option("--mask", m_mask, "Evaluation mask volume (voxels > 0.5)");
    metrics_cmd->add_option("--pred-seg", m_pred_seg, "Predicted segmentation mask");
    metrics_cmd->add_option("--gt-seg", m_gt_seg, "Ground-truth segmentation mask");
    metrics_cmd->add_option("--seg-threshold", m_threshold, "Derive segmentations by thresholding both volumes");
    metrics_cmd->add_option("--data-range", m_range, "PSNR/SSIM data range (default from domain)");
    metrics_cmd->add_option("--ms-ssim-scales", m_scales, "Largest MS-SSIM scale count")->capture_default_str();
    metrics_cmd->add_option("--hd95-mode", m_hd95, "pooled or max")->capture_default_str();
    metrics_cmd->add_option("--nsd-tolerance", m_nsd_tol, "NSD tolerance in mm")->capture_default_str();
    metrics_cmd->add_flag("--denorm-ct", m_denorm_ct, "Map norm_sym inputs back to HU first");
    metrics_cmd->add_option("--csv", m_csv, "Append a CSV row to this file");
    metrics_cmd->add_option("--case", m_case, "Case identifier for the CSV row")->capture_default_str();
    metrics_cmd->add_option("--out", m_out, "Write the report here instead of stdout");

    // normalize
    std::string n_in, n_out, n_mode = "ct", n_stats_in, n_stats_out, n_region;
    std::optional<double> n_floor;
    bool n_inverse = false;
    auto* norm_cmd = app.add_subcommand("normalize", "Intensity normalization and its inverse");
    norm_cmd->add_option("--in", n_in, "Input volume")->required();
    norm_cmd->add_option("--out", n_out, "Output volume")->required();
    norm_cmd->add_option("--mode", n_mode, "ct, mri_global, mri_per_case or mri_nonzero_masked")
        ->capture_default_str();
    norm_cmd->add_option("--stats-in", n_stats_in, "NormStats JSON (global statistics or inversion)");
    norm_cmd->add_option("--stats-out", n_stats_out, "Write the NormStats JSON here");
    norm_cmd->add_option("--region", n_region, "Statistics region mask for mri_nonzero_masked");
    norm_cmd->add_flag("--inverse", n_inverse, "Undo a normalization");
    norm_cmd->add_option("--floor", n_floor, "Zero values below this threshold in a [0, 1] volume");

    // tile-info
    std::string t_shape, t_window, t_weight = "cosine_taper", t_out;
    double t_overlap = 0.5;
    auto* tile_cmd = app.add_subcommand("tile-info", "Window counts and offsets of a tiling");
    tile_cmd->add_option("--shape", t_shape, "Volume shape")->required();
    tile_cmd->add_option("--window", t_window, "Window shape")->required();
    tile_cmd->add_option("--overlap", t_overlap, "Overlap fraction")->capture_default_str();
    tile_cmd->add_option("--weight-mode", t_weight, "uniform or cosine_taper")->capture_default_str();
    tile_cmd->add_option("--out", t_out, "Write here instead of stdout");

    // augment
    std::string a_in, a_out, a_params;
    std::optional<std::uint64_t> a_seed;
    auto* aug_cmd = app.add_subcommand("augment", "Apply seeded augmentation to a volume");
    aug_cmd->add_option("--in", a_in, "Input volume")->required();
    aug_cmd->add_option("--out", a_out, "Output volume")->required();
    aug_cmd->add_option("--params", a_params, "AugmentConfig JSON file");
    aug_cmd->add_option("--seed", a_seed, "Override the config seed");

    // demo
    std::optional<std::size_t> d_steps;
    std::uint64_t d_seed = 0;
    std::size_t d_threads = vsddpm::default_thread_count();
    std::string d_linear_out, d_out;
    auto* demo_cmd = app.add_subcommand("demo", "End-to-end run on a synthetic phantom with pass/fail checks");
    demo_cmd->add_option("--steps", d_steps, "Override the planned step count");
    demo_cmd->add_option("--seed", d_seed, "Random seed")->capture_default_str();
    demo_cmd->add_option("--threads", d_threads, "Worker threads (default from VSDDPM_THREADS)");
    demo_cmd->add_option("--linear-out", d_linear_out, "Also fit a linear denoiser and write it here");
    demo_cmd->add_option("--out", d_out, "Write the report here instead of stdout");

    for (auto* sub : app.get_subcommands({})) {
        sub->configurable();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (plan_cmd->parsed()) {
            const auto shape = parse_shape(plan_shape, "--shape");
            const auto window = parse_shape(plan_window, "--window");
            vsddpm::HardwareProfile hw{plan_latency, plan_budget};
            if (plan_calibrate) {
                hw.time_per_infer_s = calibrate_latency(window);
            }
            const auto steps = parse_step_set(plan_steps);
            try {
                const auto p = vsddpm::plan(shape, window, hw, steps, plan_overlap);
                json j = p;
                j["time_per_infer_s"] = hw.time_per_infer_s;
                j["total_budget_s"] = hw.total_budget_s;
                emit(j, plan_out);
                if (!plan_dump.empty()) {
                    const auto s = vsddpm::respace(vsddpm::linear_base_schedule(), p.t_selected);
                    emit(vsddpm::schedule_json(s), plan_dump);
                }
            } catch (const vsddpm::Error& e) {
                if (exit_code_for(e.code()) != exit_infeasible) {
                    throw;
                }
                const auto n = vsddpm::n_windows(shape, window, plan_overlap);
                const double need = hw.time_per_infer_s * static_cast<double>(n * steps.min());
                std::cerr << "vsddpm: " << e.what() << "\n"
                          << "suggestion: raise --budget to at least " << need
                          << " s, use a larger --window, or train a smaller step count\n";
                return exit_infeasible;
            }
            return exit_ok;
        }

        if (sample_cmd->parsed()) {
            const auto window = parse_shape(sample_window, "--window");
            const vsddpm::Volume cond = vsddpm::read_volume(sample_cond);
            if (cond.domain() != vsddpm::Domain::norm_sym) {
                vsddpm::fail(vsddpm::Errc::domain_mismatch, "condition volume must be norm_sym");
            }
            const auto trained = vsddpm::default_step_set();
            const auto p = vsddpm::plan(cond.shape(), window, {sample_latency, sample_budget}, trained);
            vsddpm::SamplerConfig cfg;
            cfg.steps = sample_steps.value_or(p.t_selected);
            cfg.seed = sample_seed;
            cfg.clip_denoised = !sample_no_clip;
            vsddpm::validate(cfg, trained);
            const auto s = vsddpm::respace(vsddpm::linear_base_schedule(), cfg.steps);
            const auto tiling = vsddpm::make_plan(cond.shape(), window, sample_overlap.value_or(p.overlap_final),
                                                  parse_weight_mode(sample_weight));
            std::unique_ptr<vsddpm::Denoiser> denoiser;
            if (!sample_linear.empty()) {
                auto lin = std::make_unique<vsddpm::LinearDenoiser>(
                    read_json_file(sample_linear).get<vsddpm::LinearDenoiser>());
                denoiser = std::move(lin);
            } else {
                denoiser = std::make_unique<vsddpm::GaussianAnalyticDenoiser>(
                    vsddpm::GaussianAnalyticDenoiser::conditional(sample_sigma));
            }
            const vsddpm::Grid condition[] = {cond.grid()};
            const auto out = vsddpm::sample_tiled(*denoiser, condition, tiling, cfg, s, sample_threads);
            vsddpm::Grid g = out.stitched;
            for (double& x : g) {
                x = std::clamp(x, -1.0, 1.0);
            }
            vsddpm::write_volume(cond.with_grid(std::move(g)), sample_out);
            emit(json{{"plan", p},
                      {"steps", cfg.steps},
                      {"overlap", tiling.overlap},
                      {"n_windows", tiling.size()},
                      {"seed", cfg.seed},
                      {"out", sample_out}},
                 sample_report);
            return exit_ok;
        }

        if (metrics_cmd->parsed()) {
            vsddpm::Volume pred = vsddpm::read_volume(m_pred);
            vsddpm::Volume gt = vsddpm::read_volume(m_gt);
            if (m_denorm_ct) {
                pred = vsddpm::ct_denormalize(pred);
                gt = vsddpm::ct_denormalize(gt);
            }
            std::optional<vsddpm::Mask> eval, ps, gs;
            vsddpm::MetricsMasks masks;
            if (!m_mask.empty()) {
                eval = read_mask(m_mask);
                masks.eval = &*eval;
            }
            if (!m_pred_seg.empty() || !m_gt_seg.empty()) {
                if (m_pred_seg.empty() || m_gt_seg.empty()) {
                    throw UsageError("--pred-seg and --gt-seg must be given together");
                }
                ps = read_mask(m_pred_seg);
                gs = read_mask(m_gt_seg);
                masks.pred_seg = &*ps;
                masks.gt_seg = &*gs;
            }
            vsddpm::MetricsConfig mc;
            mc.data_range = m_range;
            mc.ms_ssim_scales = m_scales;
            mc.nsd_tolerance_mm = m_nsd_tol;
            mc.seg_threshold = m_threshold;
            if (m_hd95 == "max") {
                mc.hd95_mode = vsddpm::Hd95Mode::max_of_directed;
            } else if (m_hd95 != "pooled") {
                throw UsageError("--hd95-mode must be pooled or max");
            }
            const auto r = vsddpm::report(pred, gt, masks, mc);
            emit(json(r), m_out);
            if (!m_csv.empty()) {
                const bool fresh = !fs::exists(m_csv) || fs::file_size(m_csv) == 0;
                std::ofstream f(m_csv, std::ios::app);
                if (!f) {
                    vsddpm::fail(vsddpm::Errc::io_failure, "cannot append to " + m_csv);
                }
                if (fresh) {
                    f << vsddpm::metrics_csv_header() << "\n";
                }
                f << vsddpm::metrics_csv_row(m_case, r) << "\n";
            }
            return exit_ok;
        }

        if (norm_cmd->parsed()) {
            const vsddpm::Volume in = vsddpm::read_volume(n_in);
            const auto mode = vsddpm::parse_norm_mode(n_mode);
            if (!mode) {
                throw UsageError("unknown --mode '" + n_mode + "'");
            }
            std::optional<vsddpm::NormStats> stats_in;
            if (!n_stats_in.empty()) {
                stats_in = read_json_file(n_stats_in).get<vsddpm::NormStats>();
            }
            if (n_floor) {
                vsddpm::write_volume(vsddpm::postprocess_floor(in, *n_floor), n_out);
                return exit_ok;
            }
            if (n_inverse) {
                if (*mode == vsddpm::NormMode::ct) {
                    vsddpm::write_volume(vsddpm::ct_denormalize(in), n_out);
                } else {
                    if (!stats_in) {
                        throw UsageError("--inverse of an MRI mode needs --stats-in");
                    }
                    vsddpm::write_volume(vsddpm::mri_denormalize(in, *stats_in), n_out);
                }
                return exit_ok;
            }
            std::optional<vsddpm::Mask> region;
            if (!n_region.empty()) {
                region = read_mask(n_region);
            }
            const auto [out, stats] = *mode == vsddpm::NormMode::ct
                                          ? vsddpm::ct_normalize(in)
                                          : vsddpm::mri_normalize(in, *mode, stats_in, region ? &*region : nullptr);
            vsddpm::write_volume(out, n_out);
            emit(json(stats), n_stats_out);
            return exit_ok;
        }

        if (tile_cmd->parsed()) {
            const auto tiling = vsddpm::make_plan(parse_shape(t_shape, "--shape"), parse_shape(t_window, "--window"),
                                                  t_overlap, parse_weight_mode(t_weight));
            emit(vsddpm::tile_info_json(tiling), t_out);
            return exit_ok;
        }

        if (aug_cmd->parsed()) {
            vsddpm::AugmentConfig cfg;
            if (!a_params.empty()) {
                const json j = read_json_file(a_params);
                cfg.rotation_deg = j.value("rotation_deg", cfg.rotation_deg);
                if (j.contains("scale_range")) {
                    const auto r = j.at("scale_range").get<std::vector<double>>();
                    if (r.size() != 2) {
                        throw UsageError("scale_range needs two values");
                    }
                    cfg.scale_range = {r[0], r[1]};
                }
                cfg.shear_max = j.value("shear_max", cfg.shear_max);
                cfg.intensity_shift_max = j.value("intensity_shift_max", cfg.intensity_shift_max);
                cfg.noise_sigma = j.value("noise_sigma", cfg.noise_sigma);
                cfg.smooth_sigma = j.value("smooth_sigma", cfg.smooth_sigma);
                cfg.bias_field_order = j.value("bias_field_order", cfg.bias_field_order);
                cfg.bias_field_amp = j.value("bias_field_amp", cfg.bias_field_amp);
                cfg.seed = j.value("seed", cfg.seed);
            }
            if (a_seed) {
                cfg.seed = *a_seed;
            }
            vsddpm::write_volume(vsddpm::augment(vsddpm::read_volume(a_in), cfg), a_out);
            return exit_ok;
        }

        if (demo_cmd->parsed()) {
            vsddpm::DemoOptions opt;
            opt.steps = d_steps;
            opt.seed = d_seed;
            opt.threads = d_threads;
            opt.fit_linear = !d_linear_out.empty();
            const auto t0 = std::chrono::steady_clock::now();
            const auto r = vsddpm::run_demo(opt);
            const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            emit(vsddpm::demo_json(r), d_out);
            if (r.linear) {
                emit(json(*r.linear), d_linear_out);
            }
            for (const auto& c : r.checks) {
                std::fprintf(stderr, "%s %s: %.6g %s %.6g\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value,
                             c.relation.c_str(), c.limit);
            }
            const bool fast = elapsed < 60.0;
            std::fprintf(stderr, "%s runtime_s: %.3f <= 60\n", fast ? "PASS" : "FAIL", elapsed);
            return r.passed() && fast ? exit_ok : exit_check_failed;
        }
    } catch (const UsageError& e) {
        std::cerr << "vsddpm: " << e.what() << "\n";
        return exit_usage;
    } catch (const vsddpm::Error& e) {
        std::cerr << "vsddpm: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const json::exception& e) {
        std::cerr << "vsddpm: malformed JSON input: " << e.what() << "\n";
        return exit_data;
    } catch (const std::exception& e) {
        std::cerr << "vsddpm: " << e.what() << "\n";
        return exit_data;
    }
    return exit_usage;
}
