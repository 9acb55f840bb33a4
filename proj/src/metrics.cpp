#include "vsddpm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "vsddpm/error.hpp"
#include "vsddpm/normalize.hpp"
#include "vsddpm/stats.hpp"

namespace vsddpm {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void check_pair(const Volume& pred, const Volume& gt, const Mask* mask) {
    require_same_shape(pred.shape(), gt.shape(), "pred/gt");
    if (mask) {
        require_same_shape(mask->shape(), gt.shape(), "evaluation mask");
        if (mask->empty_set()) {
            fail(Errc::empty_mask, "evaluation mask selects no voxels");
        }
    }
}

template <typename F>
double masked_mean(const Volume& pred, const Volume& gt, const Mask* mask, F f) {
    check_pair(pred, gt, mask);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < gt.size(); ++i) {
        if (mask && !(*mask)[i]) {
            continue;
        }
        sum += f(pred.values()[i] - gt.values()[i]);
        ++n;
    }
    return sum / static_cast<double>(n);
}

// Lower envelope of parabolas (Felzenszwalb & Huttenlocher) on a line with
// sample pitch h. f holds squared distances; +inf marks "no site".
void edt_1d(std::vector<double>& f, double h, std::vector<double>& d, std::vector<std::size_t>& v,
            std::vector<double>& z) {
    const std::size_t n = f.size();
    std::size_t k = 0;
    bool any = false;
    for (std::size_t q = 0; q < n; ++q) {
        if (f[q] == inf) {
            continue;
        }
        const double pq = static_cast<double>(q) * h;
        if (!any) {
            v[0] = q;
            z[0] = -inf;
            z[1] = inf;
            any = true;
            continue;
        }
        double s = 0.0;
        while (true) {
            const double pv = static_cast<double>(v[k]) * h;
            s = ((f[q] + pq * pq) - (f[v[k]] + pv * pv)) / (2.0 * (pq - pv));
            if (s > z[k]) {
                break;
            }
            --k;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = inf;
    }
    if (!any) {
        return;
    }
    k = 0;
    for (std::size_t q = 0; q < n; ++q) {
        const double pq = static_cast<double>(q) * h;
        while (z[k + 1] < pq) {
            ++k;
        }
        const double pv = static_cast<double>(v[k]) * h;
        d[q] = (pq - pv) * (pq - pv) + f[v[k]];
    }
    f.swap(d);
}

std::vector<double> squared_edt(const Mask& sites) {
    const Shape3 s = sites.shape();
    std::vector<double> g(sites.size());
    for (std::size_t n = 0; n < g.size(); ++n) {
        g[n] = sites[n] ? 0.0 : inf;
    }
    const std::size_t strides[3] = {s[1] * s[2], s[2], 1};
    for (int axis = 0; axis < 3; ++axis) {
        const std::size_t len = s[axis];
        std::vector<double> f(len), d(len), z(len + 1);
        std::vector<std::size_t> v(len);
        const int a1 = (axis + 1) % 3;
        const int a2 = (axis + 2) % 3;
        for (std::size_t u = 0; u < s[a1]; ++u) {
            for (std::size_t w = 0; w < s[a2]; ++w) {
                const std::size_t base = u * strides[a1] + w * strides[a2];
                for (std::size_t q = 0; q < len; ++q) {
                    f[q] = g[base + q * strides[axis]];
                }
                edt_1d(f, sites.spacing()[axis], d, v, z);
                for (std::size_t q = 0; q < len; ++q) {
                    g[base + q * strides[axis]] = f[q];
                }
            }
        }
    }
    return g;
}

void check_masks(const Mask& a, const Mask& b) {
    require_same_shape(a.shape(), b.shape(), "masks");
    require(a.spacing() == b.spacing(), Errc::shape_mismatch, "mask spacings differ");
}

void require_nonempty(const Mask& a, const Mask& b) {
    if (a.empty_set() || b.empty_set()) {
        fail(Errc::empty_mask, "surface distance needs two nonempty masks");
    }
}

// Squared distances compared with a relative slack so that exact ties at the
// tolerance do not depend on summation order.
bool within(double dist, double tolerance) {
    return dist * dist <= tolerance * tolerance * (1.0 + 1e-12);
}

std::string fmt(const std::optional<double>& x) {
    if (!x) {
        return "";
    }
    if (std::isinf(*x)) {
        return *x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *x);
    return buf;
}

}  // namespace

double mae_hu(const Volume& pred, const Volume& gt, const Mask* mask) {
    return masked_mean(pred, gt, mask, [](double d) { return std::abs(d); });
}

double mse(const Volume& pred, const Volume& gt, const Mask* mask) {
    return masked_mean(pred, gt, mask, [](double d) { return d * d; });
}

double rmse(const Volume& pred, const Volume& gt, const Mask* mask) { return std::sqrt(mse(pred, gt, mask)); }

double psnr(const Volume& pred, const Volume& gt, double data_range, const Mask* mask) {
    require(data_range > 0.0, Errc::invalid_argument, "data_range must be positive");
    const double m = mse(pred, gt, mask);
    if (m == 0.0) {
        return inf;
    }
    return 10.0 * std::log10(data_range * data_range / m);
}

double dice(const Mask& a, const Mask& b) {
    require_same_shape(a.shape(), b.shape(), "dice masks");
    std::size_t na = 0, nb = 0, both = 0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        na += a[n];
        nb += b[n];
        both += a[n] && b[n];
    }
    if (na + nb == 0) {
        return 1.0;
    }
    return 2.0 * static_cast<double>(both) / static_cast<double>(na + nb);
}

Mask boundary(const Mask& m) {
    const Shape3 s = m.shape();
    Mask out(s, m.spacing());
    for (std::size_t i = 0; i < s[0]; ++i) {
        for (std::size_t j = 0; j < s[1]; ++j) {
            for (std::size_t k = 0; k < s[2]; ++k) {
                if (!m(i, j, k)) {
                    continue;
                }
                const bool edge = i == 0 || j == 0 || k == 0 || i + 1 == s[0] || j + 1 == s[1] || k + 1 == s[2];
                if (edge || !m(i - 1, j, k) || !m(i + 1, j, k) || !m(i, j - 1, k) || !m(i, j + 1, k) ||
                    !m(i, j, k - 1) || !m(i, j, k + 1)) {
                    out.set(i, j, k);
                }
            }
        }
    }
    return out;
}

std::vector<double> distance_transform(const Mask& sites) {
    auto g = squared_edt(sites);
    for (double& x : g) {
        x = std::sqrt(x);
    }
    return g;
}

std::vector<double> directed_surface_distances(const Mask& from, const Mask& to) {
    check_masks(from, to);
    const Mask src = boundary(from);
    const auto dt = distance_transform(boundary(to));
    std::vector<double> out;
    for (std::size_t n = 0; n < src.size(); ++n) {
        if (src[n]) {
            out.push_back(dt[n]);
        }
    }
    return out;
}

double hd95(const Mask& a, const Mask& b, Hd95Mode mode) {
    check_masks(a, b);
    require_nonempty(a, b);
    auto ab = directed_surface_distances(a, b);
    const auto ba = directed_surface_distances(b, a);
    if (mode == Hd95Mode::max_of_directed) {
        return std::max(percentile(ab, 95.0), percentile(ba, 95.0));
    }
    ab.insert(ab.end(), ba.begin(), ba.end());
    return percentile(ab, 95.0);
}

double nsd(const Mask& a, const Mask& b, double tolerance_mm) {
    check_masks(a, b);
    require_nonempty(a, b);
    require(tolerance_mm >= 0.0, Errc::invalid_argument, "NSD tolerance must be non-negative");
    const auto ab = directed_surface_distances(a, b);
    const auto ba = directed_surface_distances(b, a);
    std::size_t hits = 0;
    for (double d : ab) {
        hits += within(d, tolerance_mm);
    }
    for (double d : ba) {
        hits += within(d, tolerance_mm);
    }
    return static_cast<double>(hits) / static_cast<double>(ab.size() + ba.size());
}

double default_data_range(const Volume& gt) {
    switch (gt.domain()) {
        case Domain::hu: return ct_clip_hi - ct_clip_lo;
        case Domain::norm_sym: return 2.0;
        case Domain::norm_unit: return 1.0;
        case Domain::mri_raw: {
            const auto [lo, hi] = std::minmax_element(gt.values().begin(), gt.values().end());
            return *hi > *lo ? *hi - *lo : 1.0;
        }
    }
    return 1.0;
}

MetricsReport report(const Volume& pred, const Volume& gt, const MetricsMasks& masks, const MetricsConfig& config) {
    check_pair(pred, gt, masks.eval);
    MetricsReport r;
    const double range = config.data_range.value_or(default_data_range(gt));
    r.mae_hu = mae_hu(pred, gt, masks.eval);
    r.mse = mse(pred, gt, masks.eval);
    r.rmse = std::sqrt(*r.mse);
    r.psnr_db = psnr(pred, gt, range, masks.eval);

    SsimOptions opt;
    opt.data_range = range;
    const auto& s = gt.shape();
    const std::size_t smallest = std::min({s[0], s[1], s[2]});
    if (smallest >= opt.window) {
        r.ssim = ssim3(pred.grid(), gt.grid(), opt);
        std::size_t scales = std::clamp<std::size_t>(config.ms_ssim_scales, 1, 5);
        while (scales > 1 && smallest < opt.window << (scales - 1)) {
            --scales;
        }
        r.ms_ssim = ms_ssim3(pred.grid(), gt.grid(), scales, opt);
        r.ms_ssim_scales = scales;
    }

    std::optional<Mask> derived_pred, derived_gt;
    const Mask* ps = masks.pred_seg;
    const Mask* gs = masks.gt_seg;
    if ((!ps || !gs) && config.seg_threshold) {
        derived_pred = Mask::from_threshold(pred, *config.seg_threshold);
        derived_gt = Mask::from_threshold(gt, *config.seg_threshold);
        ps = &*derived_pred;
        gs = &*derived_gt;
    }
    if (ps && gs) {
        r.dice = dice(*ps, *gs);
        if (!ps->empty_set() && !gs->empty_set()) {
            r.hd95_mm = hd95(*ps, *gs, config.hd95_mode);
            r.nsd = nsd(*ps, *gs, config.nsd_tolerance_mm);
        }
    }
    return r;
}

std::string metrics_csv_header() { return "case,mae_hu,mse,rmse,psnr_db,ssim,ms_ssim,dice,hd95_mm,nsd"; }

std::string metrics_csv_row(const std::string& case_id, const MetricsReport& r) {
    std::string row = case_id;
    for (const auto* x : {&r.mae_hu, &r.mse, &r.rmse, &r.psnr_db, &r.ssim, &r.ms_ssim, &r.dice, &r.hd95_mm, &r.nsd}) {
        row += ',';
        row += fmt(*x);
    }
    return row;
}

}  // namespace vsddpm
