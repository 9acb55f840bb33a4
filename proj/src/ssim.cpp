#include "vsddpm/ssim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vsddpm/error.hpp"

namespace vsddpm {

namespace {

// Valid-mode correlation with the same taps along all three axes.
Grid filter_valid(const Grid& g, const std::vector<double>& taps) {
    const std::size_t w = taps.size();
    Shape3 shape = g.shape();
    Grid cur = g;
    for (int axis = 0; axis < 3; ++axis) {
        Shape3 out_shape = shape;
        out_shape[axis] = shape[axis] - w + 1;
        Grid out(out_shape);
        for (std::size_t i = 0; i < out_shape[0]; ++i) {
            for (std::size_t j = 0; j < out_shape[1]; ++j) {
                for (std::size_t k = 0; k < out_shape[2]; ++k) {
                    double acc = 0.0;
                    for (std::size_t r = 0; r < w; ++r) {
                        const std::size_t ii = i + (axis == 0 ? r : 0);
                        const std::size_t jj = j + (axis == 1 ? r : 0);
                        const std::size_t kk = k + (axis == 2 ? r : 0);
                        acc += taps[r] * cur(ii, jj, kk);
                    }
                    out(i, j, k) = acc;
                }
            }
        }
        cur = std::move(out);
        shape = out_shape;
    }
    return cur;
}

void check_window(const Shape3& shape, const SsimOptions& opt) {
    require(opt.window % 2 == 1, Errc::invalid_argument, "SSIM window must be odd");
    require(opt.data_range > 0.0, Errc::invalid_argument, "data_range must be positive");
    for (auto extent : shape) {
        if (opt.window > extent) {
            fail(Errc::window_too_large,
                 "window " + std::to_string(opt.window) + " exceeds volume shape " + to_string(shape));
        }
    }
}

}  // namespace

std::vector<double> gaussian_taps(std::size_t window, double sigma) {
    require(window % 2 == 1, Errc::invalid_argument, "window must be odd");
    require(sigma > 0.0, Errc::invalid_argument, "sigma must be positive");
    std::vector<double> taps(window);
    const double c = static_cast<double>(window / 2);
    double sum = 0.0;
    for (std::size_t r = 0; r < window; ++r) {
        const double d = static_cast<double>(r) - c;
        taps[r] = std::exp(-d * d / (2.0 * sigma * sigma));
        sum += taps[r];
    }
    for (double& t : taps) {
        t /= sum;
    }
    return taps;
}

SsimTerms ssim3_terms(const Grid& a, const Grid& b, const SsimOptions& opt) {
    require_same_shape(a.shape(), b.shape(), "ssim3");
    check_window(a.shape(), opt);
    const auto taps = gaussian_taps(opt.window, opt.sigma);

    Grid aa(a.shape());
    Grid bb(a.shape());
    Grid ab(a.shape());
    for (std::size_t n = 0; n < a.size(); ++n) {
        aa[n] = a[n] * a[n];
        bb[n] = b[n] * b[n];
        ab[n] = a[n] * b[n];
    }
    const Grid mu_a = filter_valid(a, taps);
    const Grid mu_b = filter_valid(b, taps);
    const Grid e_aa = filter_valid(aa, taps);
    const Grid e_bb = filter_valid(bb, taps);
    const Grid e_ab = filter_valid(ab, taps);

    const double c1 = (opt.k1 * opt.data_range) * (opt.k1 * opt.data_range);
    const double c2 = (opt.k2 * opt.data_range) * (opt.k2 * opt.data_range);
    double ssim_sum = 0.0;
    double cs_sum = 0.0;
    for (std::size_t n = 0; n < mu_a.size(); ++n) {
        const double var_a = e_aa[n] - mu_a[n] * mu_a[n];
        const double var_b = e_bb[n] - mu_b[n] * mu_b[n];
        const double cov = e_ab[n] - mu_a[n] * mu_b[n];
        const double cs = (2.0 * cov + c2) / (var_a + var_b + c2);
        const double lum = (2.0 * mu_a[n] * mu_b[n] + c1) / (mu_a[n] * mu_a[n] + mu_b[n] * mu_b[n] + c1);
        ssim_sum += lum * cs;
        cs_sum += cs;
    }
    const auto count = static_cast<double>(mu_a.size());
    return {ssim_sum / count, cs_sum / count};
}

double ssim3(const Grid& a, const Grid& b, const SsimOptions& opt) { return ssim3_terms(a, b, opt).ssim; }

Grid avg_pool2(const Grid& g) {
    const Shape3 in = g.shape();
    const Shape3 out_shape{in[0] / 2, in[1] / 2, in[2] / 2};
    Grid out(out_shape);
    for (std::size_t i = 0; i < out_shape[0]; ++i) {
        for (std::size_t j = 0; j < out_shape[1]; ++j) {
            for (std::size_t k = 0; k < out_shape[2]; ++k) {
                double acc = 0.0;
                for (std::size_t di = 0; di < 2; ++di) {
                    for (std::size_t dj = 0; dj < 2; ++dj) {
                        for (std::size_t dk = 0; dk < 2; ++dk) {
                            acc += g(2 * i + di, 2 * j + dj, 2 * k + dk);
                        }
                    }
                }
                out(i, j, k) = acc / 8.0;
            }
        }
    }
    return out;
}

double ms_ssim3(const Grid& a, const Grid& b, std::size_t scales, const SsimOptions& opt) {
    require_same_shape(a.shape(), b.shape(), "ms_ssim3");
    require(scales >= 1 && scales <= 5, Errc::invalid_argument, "MS-SSIM supports 1 to 5 scales");
    const std::size_t needed = opt.window << (scales - 1);
    for (auto extent : a.shape()) {
        if (extent < needed) {
            fail(Errc::too_many_scales_for_shape, std::to_string(scales) + " scales need every dimension >= " +
                                                      std::to_string(needed) + ", shape is " + to_string(a.shape()));
        }
    }
    if (scales == 1) {
        return ssim3(a, b, opt);
    }

    double weight_sum = 0.0;
    for (std::size_t s = 0; s < scales; ++s) {
        weight_sum += ms_ssim_weights[s];
    }
    Grid x = a;
    Grid y = b;
    double result = 1.0;
    for (std::size_t s = 0; s < scales; ++s) {
        const SsimTerms terms = ssim3_terms(x, y, opt);
        const double w = ms_ssim_weights[s] / weight_sum;
        const double term = s + 1 == scales ? terms.ssim : terms.cs;
        result *= std::pow(std::max(term, 0.0), w);
        if (s + 1 < scales) {
            x = avg_pool2(x);
            y = avg_pool2(y);
        }
    }
    return result;
}

}  // namespace vsddpm
