#include "vsddpm/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <vector>

#include <json.hpp>

#include "vsddpm/error.hpp"

namespace vsddpm {

namespace fs = std::filesystem;

namespace {

constexpr char domain_tag[] = "vsddpm:domain=";

template <typename T>
T load_le(std::span<const std::byte> bytes, std::size_t offset) {
    T value;
    std::array<std::byte, sizeof(T)> raw;
    std::memcpy(raw.data(), bytes.data() + offset, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(raw.begin(), raw.end());
    }
    std::memcpy(&value, raw.data(), sizeof(T));
    return value;
}

template <typename T>
void store_le(std::vector<std::byte>& bytes, std::size_t offset, T value) {
    std::array<std::byte, sizeof(T)> raw;
    std::memcpy(raw.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(raw.begin(), raw.end());
    }
    std::memcpy(bytes.data() + offset, raw.data(), sizeof(T));
}

std::int32_t byteswap32(std::int32_t v) {
    auto u = static_cast<std::uint32_t>(v);
    u = ((u & 0xFFu) << 24) | ((u & 0xFF00u) << 8) | ((u >> 8) & 0xFF00u) | (u >> 24);
    return static_cast<std::int32_t>(u);
}

std::vector<std::byte> slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(Errc::io_failure, "cannot open " + path.string());
    }
    std::vector<char> chars((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::byte> bytes(chars.size());
    std::memcpy(bytes.data(), chars.data(), chars.size());
    return bytes;
}

void dump(const fs::path& path, std::span<const std::byte> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(Errc::io_failure, "cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        fail(Errc::io_failure, "write failed for " + path.string());
    }
}

float to_float32(double x, std::size_t n) {
    if (std::abs(x) > static_cast<double>(std::numeric_limits<float>::max())) {
        fail(Errc::io_failure, "element " + std::to_string(n) + " overflows float32");
    }
    return static_cast<float>(x);
}

}  // namespace

NiftiHeaderSubset parse_nifti_header(std::span<const std::byte> bytes) {
    if (bytes.size() < nifti_header_size) {
        fail(Errc::malformed_header, "file shorter than the 348-byte header");
    }
    const auto sizeof_hdr = load_le<std::int32_t>(bytes, 0);
    if (sizeof_hdr != static_cast<std::int32_t>(nifti_header_size)) {
        if (byteswap32(sizeof_hdr) == static_cast<std::int32_t>(nifti_header_size)) {
            fail(Errc::unsupported_endianness, "big-endian NIfTI files are not supported");
        }
        fail(Errc::malformed_header, "sizeof_hdr is " + std::to_string(sizeof_hdr) + ", expected 348");
    }
    const char* magic = reinterpret_cast<const char*>(bytes.data() + 344);
    if (std::memcmp(magic, "n+1\0", 4) != 0) {
        fail(Errc::malformed_header, "magic is not the single-file tag n+1");
    }

    NiftiHeaderSubset h;
    const auto ndim = load_le<std::int16_t>(bytes, 40);
    if (ndim < 3 || ndim > 7) {
        fail(Errc::malformed_header, "dim[0] must describe a 3D image, got " + std::to_string(ndim));
    }
    for (int d = 0; d < 3; ++d) {
        h.dims[d] = load_le<std::int16_t>(bytes, 42 + 2 * d);
        if (h.dims[d] <= 0) {
            fail(Errc::malformed_header, "non-positive dimension");
        }
    }
    for (int d = 3; d < ndim; ++d) {
        if (load_le<std::int16_t>(bytes, 42 + 2 * d) > 1) {
            fail(Errc::malformed_header, "only single-frame 3D images are supported");
        }
    }

    const auto datatype = load_le<std::int16_t>(bytes, 70);
    const auto bitpix = load_le<std::int16_t>(bytes, 72);
    if (datatype == static_cast<std::int16_t>(NiftiDatatype::int16)) {
        h.datatype = NiftiDatatype::int16;
    } else if (datatype == static_cast<std::int16_t>(NiftiDatatype::float32)) {
        h.datatype = NiftiDatatype::float32;
    } else {
        fail(Errc::unsupported_datatype, "datatype code " + std::to_string(datatype));
    }
    const int expected_bits = h.datatype == NiftiDatatype::int16 ? 16 : 32;
    if (bitpix != expected_bits) {
        fail(Errc::malformed_header, "bitpix " + std::to_string(bitpix) + " does not match datatype");
    }

    for (int d = 0; d < 3; ++d) {
        h.pixdim[d] = std::abs(static_cast<double>(load_le<float>(bytes, 80 + 4 * d)));
        if (!(std::isfinite(h.pixdim[d]) && h.pixdim[d] > 0.0)) {
            fail(Errc::malformed_header, "pixdim must be positive");
        }
    }
    const double vox_offset = load_le<float>(bytes, 108);
    if (!(vox_offset >= static_cast<double>(nifti_min_vox_offset))) {
        fail(Errc::malformed_header, "vox_offset must be at least 352");
    }
    h.vox_offset = static_cast<std::int64_t>(vox_offset);

    h.scl_slope = load_le<float>(bytes, 112);
    h.scl_inter = load_le<float>(bytes, 116);
    if (!std::isfinite(h.scl_slope) || h.scl_slope == 0.0) {
        h.scl_slope = 1.0;
    }
    if (!std::isfinite(h.scl_inter)) {
        h.scl_inter = 0.0;
    }

    const char* descrip = reinterpret_cast<const char*>(bytes.data() + 148);
    h.descrip.assign(descrip, strnlen(descrip, 80));
    return h;
}

Volume read_nifti(const fs::path& path) {
    const auto bytes = slurp(path);
    const auto h = parse_nifti_header(bytes);

    const Shape3 file_shape{static_cast<std::size_t>(h.dims[0]), static_cast<std::size_t>(h.dims[1]),
                            static_cast<std::size_t>(h.dims[2])};
    const std::size_t n = voxel_count(file_shape);
    const std::size_t elem = h.datatype == NiftiDatatype::int16 ? 2 : 4;
    const auto offset = static_cast<std::size_t>(h.vox_offset);
    if (bytes.size() < offset || bytes.size() - offset < n * elem) {
        fail(Errc::truncated_payload, "expected " + std::to_string(n * elem) + " payload bytes in " + path.string());
    }

    // NIfTI stores x fastest; the in-memory grid keeps the last axis contiguous.
    Grid grid(file_shape);
    const std::span<const std::byte> payload(bytes.data() + offset, n * elem);
    std::size_t src = 0;
    for (std::size_t z = 0; z < file_shape[2]; ++z) {
        for (std::size_t y = 0; y < file_shape[1]; ++y) {
            for (std::size_t x = 0; x < file_shape[0]; ++x, ++src) {
                const double raw = h.datatype == NiftiDatatype::int16
                                       ? static_cast<double>(load_le<std::int16_t>(payload, src * 2))
                                       : static_cast<double>(load_le<float>(payload, src * 4));
                grid(x, y, z) = raw * h.scl_slope + h.scl_inter;
            }
        }
    }

    Domain domain = h.datatype == NiftiDatatype::int16 ? Domain::hu : Domain::mri_raw;
    if (h.descrip.rfind(domain_tag, 0) == 0) {
        if (auto tagged = parse_domain(h.descrip.substr(sizeof(domain_tag) - 1))) {
            domain = *tagged;
        }
    }
    return Volume(std::move(grid), {h.pixdim[0], h.pixdim[1], h.pixdim[2]}, domain);
}

void write_nifti(const Volume& v, const fs::path& path) {
    const auto& shape = v.shape();
    for (auto d : shape) {
        if (d > static_cast<std::size_t>(std::numeric_limits<std::int16_t>::max())) {
            fail(Errc::io_failure, "dimension too large for NIfTI-1");
        }
    }
    std::vector<std::byte> bytes(nifti_min_vox_offset + v.size() * 4, std::byte{0});
    store_le<std::int32_t>(bytes, 0, static_cast<std::int32_t>(nifti_header_size));
    store_le<std::int16_t>(bytes, 40, 3);
    for (int d = 0; d < 3; ++d) {
        store_le<std::int16_t>(bytes, 42 + 2 * d, static_cast<std::int16_t>(shape[d]));
    }
    for (int d = 3; d < 7; ++d) {
        store_le<std::int16_t>(bytes, 42 + 2 * d, 1);
    }
    store_le<std::int16_t>(bytes, 70, static_cast<std::int16_t>(NiftiDatatype::float32));
    store_le<std::int16_t>(bytes, 72, 32);
    store_le<float>(bytes, 76, 1.0f);
    for (int d = 0; d < 3; ++d) {
        store_le<float>(bytes, 80 + 4 * d, static_cast<float>(v.spacing()[d]));
    }
    store_le<float>(bytes, 108, static_cast<float>(nifti_min_vox_offset));
    store_le<float>(bytes, 112, 1.0f);
    store_le<float>(bytes, 116, 0.0f);
    bytes[123] = std::byte{2};  // xyzt_units: millimetres
    const std::string descrip = std::string(domain_tag) + std::string(domain_name(v.domain()));
    std::memcpy(bytes.data() + 148, descrip.data(), descrip.size());
    std::memcpy(bytes.data() + 344, "n+1\0", 4);

    std::size_t dst = 0;
    for (std::size_t z = 0; z < shape[2]; ++z) {
        for (std::size_t y = 0; y < shape[1]; ++y) {
            for (std::size_t x = 0; x < shape[0]; ++x, ++dst) {
                store_le<float>(bytes, nifti_min_vox_offset + dst * 4, to_float32(v(x, y, z), dst));
            }
        }
    }
    dump(path, bytes);
}

fs::path raw_payload_path(const fs::path& path) {
    fs::path p = path;
    return p.replace_extension(".f32");
}

fs::path raw_sidecar_path(const fs::path& path) {
    fs::path p = path;
    return p.replace_extension(".json");
}

Volume read_raw(const fs::path& json_sidecar) {
    nlohmann::json meta;
    {
        std::ifstream in(json_sidecar);
        if (!in) {
            fail(Errc::io_failure, "cannot open " + json_sidecar.string());
        }
        try {
            in >> meta;
        } catch (const nlohmann::json::exception& e) {
            fail(Errc::sidecar_mismatch, std::string("unparseable sidecar: ") + e.what());
        }
    }

    Shape3 shape{};
    Spacing3 spacing{};
    Domain domain{};
    try {
        const auto& js = meta.at("shape");
        const auto& jp = meta.at("spacing_mm");
        if (js.size() != 3 || jp.size() != 3) {
            fail(Errc::sidecar_mismatch, "shape and spacing_mm must have three entries");
        }
        for (int d = 0; d < 3; ++d) {
            const auto extent = js.at(d).get<std::int64_t>();
            if (extent <= 0) {
                fail(Errc::sidecar_mismatch, "shape entries must be positive");
            }
            shape[d] = static_cast<std::size_t>(extent);
            spacing[d] = jp.at(d).get<double>();
        }
        const auto name = meta.at("domain").get<std::string>();
        const auto parsed = parse_domain(name);
        if (!parsed) {
            fail(Errc::sidecar_mismatch, "unknown domain " + name);
        }
        domain = *parsed;
        if (meta.at("dtype").get<std::string>() != "float32") {
            fail(Errc::unsupported_datatype, "raw payloads must be float32");
        }
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::sidecar_mismatch, std::string("sidecar missing or mistyped key: ") + e.what());
    }

    const auto bytes = slurp(raw_payload_path(json_sidecar));
    const std::size_t n = voxel_count(shape);
    if (bytes.size() != n * 4) {
        fail(Errc::sidecar_mismatch, "sidecar declares " + std::to_string(n) + " elements, payload holds " +
                                         std::to_string(bytes.size()) + " bytes");
    }
    std::vector<double> data(n);
    for (std::size_t i = 0; i < n; ++i) {
        data[i] = load_le<float>(bytes, i * 4);
    }
    return Volume(shape, spacing, std::move(data), domain);
}

void write_raw(const Volume& v, const fs::path& path) {
    const nlohmann::json meta = {
        {"shape", {v.shape()[0], v.shape()[1], v.shape()[2]}},
        {"spacing_mm", {v.spacing()[0], v.spacing()[1], v.spacing()[2]}},
        {"domain", domain_name(v.domain())},
        {"dtype", "float32"},
    };
    std::vector<std::byte> bytes(v.size() * 4);
    for (std::size_t i = 0; i < v.size(); ++i) {
        store_le<float>(bytes, i * 4, to_float32(v.values()[i], i));
    }
    dump(raw_payload_path(path), bytes);

    std::ofstream out(raw_sidecar_path(path), std::ios::trunc);
    if (!out) {
        fail(Errc::io_failure, "cannot open " + raw_sidecar_path(path).string() + " for writing");
    }
    out << meta.dump(2) << '\n';
}

Volume read_volume(const fs::path& path) {
    return path.extension() == ".json" ? read_raw(path) : read_nifti(path);
}

void write_volume(const Volume& v, const fs::path& path) {
    if (path.extension() == ".json" || path.extension() == ".f32") {
        write_raw(v, path);
    } else {
        write_nifti(v, path);
    }
}

}  // namespace vsddpm
