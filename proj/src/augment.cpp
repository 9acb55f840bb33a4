#include "vsddpm/augment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "vsddpm/error.hpp"

namespace vsddpm {

namespace {

constexpr double snap_eps = 1e-9;

Mat3 identity() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

Mat3 mul(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return c;
}

Mat3 inverse(const Mat3& m) {
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    require(std::abs(det) > 1e-12, Errc::invalid_argument, "affine map is singular");
    Mat3 r{};
    r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    r[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
    r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    r[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    return r;
}

Mat3 axis_rotation(int axis, double rad) {
    Mat3 r = identity();
    const int a = (axis + 1) % 3;
    const int b = (axis + 2) % 3;
    r[a][a] = std::cos(rad);
    r[a][b] = -std::sin(rad);
    r[b][a] = std::sin(rad);
    r[b][b] = std::cos(rad);
    return r;
}

double volume_min(const Volume& v) { return *std::min_element(v.values().begin(), v.values().end()); }

// Bounded domains clamp so small overshoots from noise or interpolation stay valid.
Volume finish(const Volume& v, Grid g) {
    if (const auto range = domain_range(v.domain())) {
        for (double& x : g) {
            x = std::clamp(x, (*range)[0], (*range)[1]);
        }
    }
    return v.with_grid(std::move(g));
}

// Continuous index → (floor, fraction), snapping values within eps of a
// grid point so identity maps reproduce the input exactly.
bool locate(double x, std::size_t n, std::size_t& i0, double& t) {
    const double r = std::round(x);
    if (std::abs(x - r) < snap_eps) {
        x = r;
    }
    if (x < 0.0 || x > static_cast<double>(n - 1)) {
        return false;
    }
    i0 = static_cast<std::size_t>(std::floor(x));
    t = x - static_cast<double>(i0);
    if (i0 + 1 >= n) {
        i0 = n - 1;
        t = 0.0;
    }
    return true;
}

double lerp(double a, double b, double t) { return t == 0.0 ? a : a + t * (b - a); }

void check_sigma(double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        fail(Errc::negative_sigma, "sigma must be a finite non-negative number");
    }
}

}  // namespace

void validate(const AugmentConfig& cfg) {
    require(cfg.rotation_deg >= 0.0, Errc::invalid_argument, "rotation_deg must be non-negative");
    require(cfg.scale_range.first > 0.0 && cfg.scale_range.second >= cfg.scale_range.first, Errc::invalid_argument,
            "scale_range must be positive and ordered");
    require(cfg.shear_max >= 0.0, Errc::invalid_argument, "shear_max must be non-negative");
    require(cfg.intensity_shift_max >= 0.0, Errc::invalid_argument, "intensity_shift_max must be non-negative");
    check_sigma(cfg.noise_sigma);
    check_sigma(cfg.smooth_sigma);
    if (cfg.bias_field_order < 0 || cfg.bias_field_order > max_bias_order) {
        fail(Errc::order_too_high, "bias field order must lie in 0..3");
    }
    require(cfg.bias_field_amp >= 0.0, Errc::invalid_argument, "bias_field_amp must be non-negative");
}

Volume affine_resample(const Volume& v, const Mat3& forward) {
    const Mat3 inv = inverse(forward);
    const Shape3& s = v.shape();
    const Spacing3& sp = v.spacing();
    Vec3 centre;
    for (int a = 0; a < 3; ++a) {
        centre[a] = (static_cast<double>(s[a]) - 1.0) / 2.0;
    }
    const double fill = volume_min(v);
    Grid out(s);
    for (std::size_t i = 0; i < s[0]; ++i) {
        for (std::size_t j = 0; j < s[1]; ++j) {
            for (std::size_t k = 0; k < s[2]; ++k) {
                const Vec3 y{(static_cast<double>(i) - centre[0]) * sp[0], (static_cast<double>(j) - centre[1]) * sp[1],
                             (static_cast<double>(k) - centre[2]) * sp[2]};
                std::array<std::size_t, 3> i0{};
                Vec3 t{};
                bool inside = true;
                for (int a = 0; a < 3 && inside; ++a) {
                    const double x = inv[a][0] * y[0] + inv[a][1] * y[1] + inv[a][2] * y[2];
                    inside = locate(x / sp[a] + centre[a], s[a], i0[a], t[a]);
                }
                if (!inside) {
                    out(i, j, k) = fill;
                    continue;
                }
                const std::size_t i1 = std::min(i0[0] + 1, s[0] - 1);
                const std::size_t j1 = std::min(i0[1] + 1, s[1] - 1);
                const std::size_t k1 = std::min(i0[2] + 1, s[2] - 1);
                const double c00 = lerp(v(i0[0], i0[1], i0[2]), v(i0[0], i0[1], k1), t[2]);
                const double c01 = lerp(v(i0[0], j1, i0[2]), v(i0[0], j1, k1), t[2]);
                const double c10 = lerp(v(i1, i0[1], i0[2]), v(i1, i0[1], k1), t[2]);
                const double c11 = lerp(v(i1, j1, i0[2]), v(i1, j1, k1), t[2]);
                out(i, j, k) = lerp(lerp(c00, c01, t[1]), lerp(c10, c11, t[1]), t[0]);
            }
        }
    }
    return finish(v, std::move(out));
}

Volume rotate(const Volume& v, const Vec3& angles_deg, double max_deg) {
    for (double a : angles_deg) {
        if (!(std::abs(a) <= max_deg)) {
            fail(Errc::angle_out_of_range,
                 "rotation " + std::to_string(a) + " deg exceeds the limit of " + std::to_string(max_deg));
        }
    }
    Mat3 r = identity();
    for (int axis = 0; axis < 3; ++axis) {
        r = mul(axis_rotation(axis, angles_deg[axis] * std::numbers::pi / 180.0), r);
    }
    return affine_resample(v, r);
}

Volume scale(const Volume& v, const Vec3& factors) {
    Mat3 m = identity();
    for (int a = 0; a < 3; ++a) {
        if (!(factors[a] >= min_scale_factor && factors[a] <= max_scale_factor)) {
            fail(Errc::factor_out_of_range, "scale factor " + std::to_string(factors[a]) + " outside [0.1, 10]");
        }
        m[a][a] = factors[a];
    }
    return affine_resample(v, m);
}

Volume shear(const Volume& v, const Vec3& coefficients) {
    for (double c : coefficients) {
        if (!(std::abs(c) <= max_shear)) {
            fail(Errc::factor_out_of_range, "shear coefficient " + std::to_string(c) + " outside [-1, 1]");
        }
    }
    Mat3 m = identity();
    m[0][1] = coefficients[0];
    m[0][2] = coefficients[1];
    m[1][2] = coefficients[2];
    return affine_resample(v, m);
}

Volume intensity_shift(const Volume& v, double delta) {
    require(std::isfinite(delta), Errc::invalid_argument, "shift must be finite");
    Grid g = v.grid();
    for (double& x : g) {
        x += delta;
    }
    return finish(v, std::move(g));
}

Volume gaussian_noise(const Volume& v, double sigma, Rng& rng) {
    check_sigma(sigma);
    if (sigma == 0.0) {
        return v;
    }
    Grid g = v.grid();
    for (double& x : g) {
        x += sigma * rng.normal();
    }
    return finish(v, std::move(g));
}

Volume gaussian_smooth(const Volume& v, double sigma) {
    check_sigma(sigma);
    if (sigma == 0.0) {
        return v;
    }
    const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (std::ptrdiff_t r = -radius; r <= radius; ++r) {
        const double w = std::exp(-static_cast<double>(r * r) / (2.0 * sigma * sigma));
        taps[static_cast<std::size_t>(r + radius)] = w;
        sum += w;
    }
    for (double& w : taps) {
        w /= sum;
    }
    const Shape3& s = v.shape();
    Grid cur = v.grid();
    for (int axis = 0; axis < 3; ++axis) {
        Grid out(s);
        const auto n = static_cast<std::ptrdiff_t>(s[axis]);
        for (std::size_t i = 0; i < s[0]; ++i) {
            for (std::size_t j = 0; j < s[1]; ++j) {
                for (std::size_t k = 0; k < s[2]; ++k) {
                    std::array<std::size_t, 3> idx{i, j, k};
                    const auto centre = static_cast<std::ptrdiff_t>(idx[axis]);
                    double acc = 0.0;
                    for (std::ptrdiff_t r = -radius; r <= radius; ++r) {
                        idx[axis] = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(centre + r, 0, n - 1));
                        acc += taps[static_cast<std::size_t>(r + radius)] * cur(idx[0], idx[1], idx[2]);
                    }
                    out(i, j, k) = acc;
                }
            }
        }
        cur = std::move(out);
    }
    return finish(v, std::move(cur));
}

Volume bias_field(const Volume& v, int order, double amplitude, Rng& rng) {
    if (order < 0 || order > max_bias_order) {
        fail(Errc::order_too_high, "bias field order " + std::to_string(order) + " exceeds 3");
    }
    require(amplitude >= 0.0 && std::isfinite(amplitude), Errc::invalid_argument, "amplitude must be non-negative");
    if (amplitude == 0.0) {
        return v;
    }
    struct Term {
        int p, q, r;
        double c;
    };
    std::vector<Term> terms;
    for (int p = 0; p <= order; ++p) {
        for (int q = 0; p + q <= order; ++q) {
            for (int r = 0; p + q + r <= order; ++r) {
                terms.push_back({p, q, r, rng.normal()});
            }
        }
    }
    const Shape3& s = v.shape();
    auto coord = [](std::size_t i, std::size_t n) {
        return n > 1 ? 2.0 * static_cast<double>(i) / static_cast<double>(n - 1) - 1.0 : 0.0;
    };
    Grid field(s);
    double peak = 0.0;
    for (std::size_t i = 0; i < s[0]; ++i) {
        for (std::size_t j = 0; j < s[1]; ++j) {
            for (std::size_t k = 0; k < s[2]; ++k) {
                const double x = coord(i, s[0]), y = coord(j, s[1]), z = coord(k, s[2]);
                double p = 0.0;
                for (const auto& t : terms) {
                    p += t.c * std::pow(x, t.p) * std::pow(y, t.q) * std::pow(z, t.r);
                }
                field(i, j, k) = p;
                peak = std::max(peak, std::abs(p));
            }
        }
    }
    Grid g = v.grid();
    const double gain = peak > 0.0 ? amplitude / peak : 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
        g[n] *= std::exp(gain * field[n]);
    }
    return finish(v, std::move(g));
}

Volume augment(const Volume& v, const AugmentConfig& cfg) {
    validate(cfg);
    Rng rng(cfg.seed);
    auto sym = [&rng](double m) { return m * (2.0 * rng.uniform() - 1.0); };

    Volume out = v;
    if (cfg.rotation_deg > 0.0) {
        out = rotate(out, {sym(cfg.rotation_deg), sym(cfg.rotation_deg), sym(cfg.rotation_deg)}, cfg.rotation_deg);
    }
    if (cfg.scale_range.first != 1.0 || cfg.scale_range.second != 1.0) {
        Vec3 f;
        for (double& x : f) {
            x = cfg.scale_range.first + (cfg.scale_range.second - cfg.scale_range.first) * rng.uniform();
        }
        out = scale(out, f);
    }
    if (cfg.shear_max > 0.0) {
        out = shear(out, {sym(cfg.shear_max), sym(cfg.shear_max), sym(cfg.shear_max)});
    }
    if (cfg.intensity_shift_max > 0.0) {
        out = intensity_shift(out, sym(cfg.intensity_shift_max));
    }
    if (cfg.bias_field_amp > 0.0) {
        out = bias_field(out, cfg.bias_field_order, cfg.bias_field_amp, rng);
    }
    if (cfg.smooth_sigma > 0.0) {
        out = gaussian_smooth(out, cfg.smooth_sigma);
    }
    if (cfg.noise_sigma > 0.0) {
        out = gaussian_noise(out, cfg.noise_sigma, rng);
    }
    return out;
}

}  // namespace vsddpm
