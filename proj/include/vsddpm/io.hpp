#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "vsddpm/volume.hpp"

namespace vsddpm {

/// Supported on-disk element types (NIfTI datatype codes).
enum class NiftiDatatype : std::int16_t { int16 = 4, float32 = 16 };

/// The subset of the NIfTI-1 header this library reads and writes.
struct NiftiHeaderSubset {
    std::array<std::int64_t, 3> dims{};
    NiftiDatatype datatype = NiftiDatatype::float32;
    std::array<double, 3> pixdim{1.0, 1.0, 1.0};
    double scl_slope = 1.0;
    double scl_inter = 0.0;
    std::int64_t vox_offset = 352;
    std::string descrip;
};

inline constexpr std::size_t nifti_header_size = 348;
inline constexpr std::size_t nifti_min_vox_offset = 352;

/// Parses and validates the first 348 bytes of a single-file NIfTI-1 image.
NiftiHeaderSubset parse_nifti_header(std::span<const std::byte> bytes);

/// Reads an uncompressed little-endian single-file NIfTI-1 (int16 or float32).
/// Values are scaled by scl_slope/scl_inter (a zero slope counts as 1). The
/// domain is hu for int16 payloads and mri_raw for float32, unless the
/// description field carries a domain tag written by write_nifti.
Volume read_nifti(const std::filesystem::path& path);

/// Writes a float32 NIfTI-1 file with unit slope and zero intercept. The
/// domain is recorded in the description field.
void write_nifti(const Volume& v, const std::filesystem::path& path);

/// Reads a `<name>.json` sidecar and its `<name>.f32` payload. The payload is
/// contiguous little-endian float32 in row-major order.
Volume read_raw(const std::filesystem::path& json_sidecar);

/// Writes `<name>.json` + `<name>.f32`; `path` may name either file or the stem.
void write_raw(const Volume& v, const std::filesystem::path& path);

/// Path of the payload file that belongs to a sidecar.
std::filesystem::path raw_payload_path(const std::filesystem::path& path);
std::filesystem::path raw_sidecar_path(const std::filesystem::path& path);

/// Dispatches on extension: `.json` → raw format, anything else → NIfTI.
Volume read_volume(const std::filesystem::path& path);
void write_volume(const Volume& v, const std::filesystem::path& path);

}  // namespace vsddpm
