#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vsddpm/ssim.hpp"
#include "vsddpm/volume.hpp"

namespace vsddpm {

double mae_hu(const Volume& pred, const Volume& gt, const Mask* mask = nullptr);
double mse(const Volume& pred, const Volume& gt, const Mask* mask = nullptr);
double rmse(const Volume& pred, const Volume& gt, const Mask* mask = nullptr);

/// 10·log10(range² / mse); +infinity when the volumes agree exactly.
double psnr(const Volume& pred, const Volume& gt, double data_range, const Mask* mask = nullptr);

/// Both empty counts as perfect agreement (1).
double dice(const Mask& a, const Mask& b);

/// Mask voxels with at least one 6-neighbour outside the mask. Voxels on the
/// volume border count as boundary.
Mask boundary(const Mask& m);

/// Exact Euclidean distance (mm) from every voxel to the nearest set voxel of
/// `sites`, honouring anisotropic spacing. +infinity when `sites` is empty.
std::vector<double> distance_transform(const Mask& sites);

/// Distances from each boundary voxel of `from` to the boundary of `to`.
std::vector<double> directed_surface_distances(const Mask& from, const Mask& to);

enum class Hd95Mode { pooled, max_of_directed };

double hd95(const Mask& a, const Mask& b, Hd95Mode mode = Hd95Mode::pooled);

inline constexpr double default_nsd_tolerance_mm = 1.0;

/// Fraction of both boundaries lying within `tolerance_mm` of the other one.
double nsd(const Mask& a, const Mask& b, double tolerance_mm = default_nsd_tolerance_mm);

struct MetricsConfig {
    std::optional<double> data_range;   // default derived from the gt domain
    std::size_t ms_ssim_scales = 3;     // reduced automatically for small volumes
    Hd95Mode hd95_mode = Hd95Mode::pooled;
    double nsd_tolerance_mm = default_nsd_tolerance_mm;
    std::optional<double> seg_threshold;  // derive masks when none are given
};

struct MetricsMasks {
    const Mask* eval = nullptr;
    const Mask* pred_seg = nullptr;
    const Mask* gt_seg = nullptr;
};

struct MetricsReport {
    std::optional<double> mae_hu;
    std::optional<double> mse;
    std::optional<double> rmse;
    std::optional<double> psnr_db;
    std::optional<double> ssim;
    std::optional<double> ms_ssim;
    std::optional<double> dice;
    std::optional<double> hd95_mm;
    std::optional<double> nsd;
    std::size_t ms_ssim_scales = 0;
};

/// Data range implied by a domain: the CT clip window for hu, 2 for norm_sym,
/// 1 for norm_unit and the observed gt range for mri_raw.
double default_data_range(const Volume& gt);

MetricsReport report(const Volume& pred, const Volume& gt, const MetricsMasks& masks = {},
                     const MetricsConfig& config = {});

/// Fixed column order for CSV batch tables; absent metrics are empty cells.
std::string metrics_csv_header();
std::string metrics_csv_row(const std::string& case_id, const MetricsReport& r);

}  // namespace vsddpm
