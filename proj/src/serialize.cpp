#include "vsddpm/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vsddpm/error.hpp"

namespace vsddpm {

json real_or_inf(double x) {
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    return x;
}

double real_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") {
            return std::numeric_limits<double>::infinity();
        }
        if (s == "-inf") {
            return -std::numeric_limits<double>::infinity();
        }
        fail(Errc::invalid_argument, "expected a number, got \"" + s + "\"");
    }
    require(j.is_number(), Errc::invalid_argument, "expected a number");
    return j.get<double>();
}

void to_json(json& j, const BudgetPlan& p) {
    j = json{{"n_windows", p.n_windows},
             {"t_max_real", p.t_max_real},
             {"t_selected", p.t_selected},
             {"overlap_final", p.overlap_final},
             {"est_runtime_s", p.est_runtime_s}};
}

void to_json(json& j, const LossReport& r) {
    json terms = json::array();
    for (const auto& t : r.terms) {
        terms.push_back({{"name", t.name}, {"value", t.value}, {"weight", t.weight}});
    }
    j = json{{"terms", terms}, {"total", r.total}};
}

void to_json(json& j, const NormStats& s) {
    j = json{{"mode", std::string(norm_mode_name(s.mode))},
             {"clip_lo", s.clip_lo},
             {"clip_hi", s.clip_hi},
             {"mean", s.mean},
             {"std", s.std},
             {"post_min", s.post_min},
             {"post_max", s.post_max}};
}

void from_json(const json& j, NormStats& s) {
    const auto mode = parse_norm_mode(j.at("mode").get<std::string>());
    if (!mode) {
        fail(Errc::stats_mismatch, "unknown normalization mode " + j.at("mode").dump());
    }
    s.mode = *mode;
    s.clip_lo = j.at("clip_lo").get<double>();
    s.clip_hi = j.at("clip_hi").get<double>();
    s.mean = j.at("mean").get<double>();
    s.std = j.at("std").get<double>();
    s.post_min = j.at("post_min").get<double>();
    s.post_max = j.at("post_max").get<double>();
}

void to_json(json& j, const MetricsReport& r) {
    j = json::object();
    auto put = [&j](const char* key, const std::optional<double>& x) {
        if (x) {
            j[key] = real_or_inf(*x);
        }
    };
    put("mae_hu", r.mae_hu);
    put("mse", r.mse);
    put("rmse", r.rmse);
    put("psnr_db", r.psnr_db);
    put("ssim", r.ssim);
    put("ms_ssim", r.ms_ssim);
    put("dice", r.dice);
    put("hd95_mm", r.hd95_mm);
    put("nsd", r.nsd);
}

void to_json(json& j, const LinearDenoiser& d) {
    j = json{{"steps", d.steps()}, {"a", d.a}, {"b", d.b}, {"v_raw", d.v_raw}, {"train_mse", d.train_mse}};
}

void from_json(const json& j, LinearDenoiser& d) {
    d.a = j.at("a").get<std::vector<double>>();
    d.b = j.at("b").get<std::vector<double>>();
    d.v_raw = j.at("v_raw").get<std::vector<double>>();
    d.train_mse = j.value("train_mse", std::vector<double>(d.a.size(), 0.0));
    require(d.b.size() == d.a.size() && d.v_raw.size() == d.a.size(), Errc::invariant_violation,
            "linear denoiser coefficient tables differ in length");
}

json schedule_json(const NoiseSchedule& s) {
    return json{{"steps", s.steps()},
                {"base_steps", s.base_steps},
                {"base_indices", s.base_indices},
                {"betas", s.betas},
                {"alpha_bars", s.alpha_bars}};
}

json tile_info_json(const WindowPlan& plan) {
    json per_axis = json::array();
    for (int a = 0; a < 3; ++a) {
        per_axis.push_back(axis_offsets(plan.volume[a], plan.window[a], plan.overlap).size());
    }
    json offsets = json::array();
    for (const auto& o : plan.offsets) {
        offsets.push_back(o);
    }
    const auto counts = coverage(plan);
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    double total = 0.0;
    for (auto c : counts) {
        total += static_cast<double>(c);
    }
    const json cover{{"min", *lo}, {"max", *hi}, {"mean", total / static_cast<double>(counts.size())}};
    return json{{"volume", plan.volume},
                {"window", plan.window},
                {"overlap", plan.overlap},
                {"weight_mode", plan.weight_mode == WeightMode::uniform ? "uniform" : "cosine_taper"},
                {"windows_per_axis", per_axis},
                {"n_windows", plan.size()},
                {"coverage", cover},
                {"offsets", offsets}};
}

}  // namespace vsddpm
