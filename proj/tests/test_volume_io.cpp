#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "vsddpm/error.hpp"
#include "vsddpm/io.hpp"

using namespace vsddpm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("vsddpm_io_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

// Hand-laid NIfTI-1 header following the published field offsets.
std::vector<char> header(std::int16_t datatype, std::int16_t bitpix, std::int16_t nx, std::int16_t ny,
                         std::int16_t nz, float slope = 1.0f, float inter = 0.0f) {
    std::vector<char> h(352, 0);
    const std::int32_t size = 348;
    std::memcpy(&h[0], &size, 4);
    const std::int16_t dims[8] = {3, nx, ny, nz, 1, 1, 1, 1};
    std::memcpy(&h[40], dims, sizeof dims);
    std::memcpy(&h[70], &datatype, 2);
    std::memcpy(&h[72], &bitpix, 2);
    const float pixdim[8] = {1, 1, 1, 1, 1, 1, 1, 1};
    std::memcpy(&h[76], pixdim, sizeof pixdim);
    const float vox = 352.0f;
    std::memcpy(&h[108], &vox, 4);
    std::memcpy(&h[112], &slope, 4);
    std::memcpy(&h[116], &inter, 4);
    std::memcpy(&h[344], "n+1\0", 4);
    return h;
}

void write_bytes(const fs::path& p, const std::vector<char>& bytes) {
    std::ofstream f(p, std::ios::binary);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
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

Volume random_volume(std::mt19937_64& gen, Domain domain) {
    std::uniform_int_distribution<std::size_t> ext(1, 32);
    std::uniform_int_distribution<int> sp(1, 8);
    const Shape3 s{ext(gen), ext(gen), ext(gen)};
    std::uniform_real_distribution<float> u(domain == Domain::norm_sym ? -1.0f : -2000.0f,
                                            domain == Domain::norm_sym ? 1.0f : 3000.0f);
    std::vector<double> data(voxel_count(s));
    for (double& x : data) {
        x = static_cast<double>(u(gen));  // float-representable by construction
    }
    return Volume(s, {sp(gen) * 0.25, sp(gen) * 0.5, sp(gen) * 0.75}, std::move(data), domain);
}

}  // namespace

TEST_CASE("float32 zero payload reads back as zeros with unit spacing") {
    TempDir dir;
    auto bytes = header(16, 32, 4, 4, 4);
    bytes.resize(352 + 64 * 4, 0);
    write_bytes(dir.path / "z.nii", bytes);
    const Volume v = read_nifti(dir.path / "z.nii");
    CHECK(v.shape() == Shape3{4, 4, 4});
    CHECK(v.spacing() == Spacing3{1, 1, 1});
    CHECK(v.domain() == Domain::mri_raw);
    for (double x : v.values()) {
        CHECK(x == 0.0);
    }
}

TEST_CASE("int16 payload applies slope and intercept") {
    TempDir dir;
    auto bytes = header(4, 16, 1, 1, 1, 2.0f, -30.0f);
    const std::int16_t raw = 100;
    bytes.resize(354);
    std::memcpy(&bytes[352], &raw, 2);
    write_bytes(dir.path / "s.nii", bytes);
    const Volume v = read_nifti(dir.path / "s.nii");
    CHECK(v.values()[0] == 170.0);
    CHECK(v.domain() == Domain::hu);
}

TEST_CASE("zero slope counts as one") {
    TempDir dir;
    auto bytes = header(4, 16, 1, 1, 1, 0.0f, 5.0f);
    const std::int16_t raw = -7;
    bytes.resize(354);
    std::memcpy(&bytes[352], &raw, 2);
    write_bytes(dir.path / "s.nii", bytes);
    CHECK(read_nifti(dir.path / "s.nii").values()[0] == -2.0);
}

TEST_CASE("payload order: x varies fastest on disk") {
    TempDir dir;
    auto bytes = header(16, 32, 2, 3, 4);
    std::vector<float> payload(24);
    for (std::size_t n = 0; n < payload.size(); ++n) {
        payload[n] = static_cast<float>(n);
    }
    bytes.resize(352 + 24 * 4);
    std::memcpy(&bytes[352], payload.data(), 24 * 4);
    write_bytes(dir.path / "o.nii", bytes);
    const Volume v = read_nifti(dir.path / "o.nii");
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 3; ++y) {
            for (std::size_t z = 0; z < 4; ++z) {
                CHECK(v(x, y, z) == static_cast<double>(x + 2 * y + 6 * z));
            }
        }
    }
}

TEST_CASE("header rejections") {
    TempDir dir;
    const fs::path p = dir.path / "bad.nii";

    SUBCASE("magic zeroed") {
        auto bytes = header(16, 32, 1, 1, 1);
        bytes.resize(356);
        std::memset(&bytes[344], 0, 4);
        write_bytes(p, bytes);
        CHECK(code_of([&] { read_nifti(p); }) == Errc::malformed_header);
    }
    SUBCASE("every wrong size field") {
        for (std::int32_t size : {0, 1, 347, 349, 540, -348}) {
            auto bytes = header(16, 32, 1, 1, 1);
            bytes.resize(356);
            std::memcpy(&bytes[0], &size, 4);
            write_bytes(p, bytes);
            CHECK(code_of([&] { read_nifti(p); }) == Errc::malformed_header);
        }
    }
    SUBCASE("byte-swapped size means big-endian") {
        auto bytes = header(16, 32, 1, 1, 1);
        bytes.resize(356);
        const unsigned char be[4] = {0, 0, 1, 0x5C};
        std::memcpy(&bytes[0], be, 4);
        write_bytes(p, bytes);
        CHECK(code_of([&] { read_nifti(p); }) == Errc::unsupported_endianness);
    }
    SUBCASE("unsupported datatype") {
        auto bytes = header(64, 64, 1, 1, 1);
        bytes.resize(360);
        write_bytes(p, bytes);
        CHECK(code_of([&] { read_nifti(p); }) == Errc::unsupported_datatype);
    }
    SUBCASE("truncated payload") {
        auto bytes = header(16, 32, 4, 4, 4);
        bytes.resize(352 + 63 * 4);
        write_bytes(p, bytes);
        CHECK(code_of([&] { read_nifti(p); }) == Errc::truncated_payload);
    }
    SUBCASE("vox_offset below 352") {
        auto bytes = header(16, 32, 1, 1, 1);
        const float vox = 348.0f;
        std::memcpy(&bytes[108], &vox, 4);
        bytes.resize(356);
        write_bytes(p, bytes);
        CHECK(code_of([&] { read_nifti(p); }) == Errc::malformed_header);
    }
    SUBCASE("short file") {
        write_bytes(p, std::vector<char>(100, 0));
        CHECK(code_of([&] { read_nifti(p); }) == Errc::malformed_header);
    }
}

TEST_CASE("nifti round trip preserves values, spacing and domain") {
    TempDir dir;
    std::mt19937_64 gen(11);
    for (Domain d : {Domain::mri_raw, Domain::hu, Domain::norm_sym}) {
        const Volume v = random_volume(gen, d);
        write_nifti(v, dir.path / "r.nii");
        const Volume back = read_nifti(dir.path / "r.nii");
        CHECK(back.shape() == v.shape());
        CHECK(back.spacing() == v.spacing());
        CHECK(back.domain() == d);
        CHECK(std::memcmp(back.values().data(), v.values().data(), v.size() * sizeof(double)) == 0);
    }
    const Volume aniso(Shape3{2, 2, 2}, {0.5, 0.5, 2.0}, std::vector<double>(8, 1.0), Domain::mri_raw);
    write_nifti(aniso, dir.path / "a.nii");
    CHECK(read_nifti(dir.path / "a.nii").spacing() == Spacing3{0.5, 0.5, 2.0});
}

TEST_CASE("write to an unwritable path fails with IoFailure") {
    const Volume v(Shape3{1, 1, 1}, {1, 1, 1}, {0.0}, Domain::mri_raw);
    CHECK(code_of([&] { write_nifti(v, "/nonexistent_dir/x.nii"); }) == Errc::io_failure);
    CHECK(code_of([&] { write_raw(v, "/nonexistent_dir/x.json"); }) == Errc::io_failure);
}

TEST_CASE("raw round trip and sidecar checks") {
    TempDir dir;
    std::mt19937_64 gen(5);
    const Volume v = random_volume(gen, Domain::norm_sym);
    write_raw(v, dir.path / "vol.json");
    CHECK(fs::exists(dir.path / "vol.f32"));
    const Volume back = read_raw(dir.path / "vol.json");
    CHECK(back.shape() == v.shape());
    CHECK(back.spacing() == v.spacing());
    CHECK(std::memcmp(back.values().data(), v.values().data(), v.size() * sizeof(double)) == 0);

    SUBCASE("payload shorter than declared") {
        std::ofstream(dir.path / "m.json") << R"({"shape":[2,2,2],"spacing_mm":[1,1,1],"domain":"mri_raw","dtype":"float32"})";
        write_bytes(dir.path / "m.f32", std::vector<char>(7 * 4, 0));
        CHECK(code_of([&] { read_raw(dir.path / "m.json"); }) == Errc::sidecar_mismatch);
    }
    SUBCASE("norm_sym domain rejects out-of-range element") {
        std::ofstream(dir.path / "n.json") << R"({"shape":[1,1,1],"spacing_mm":[1,1,1],"domain":"norm_sym","dtype":"float32"})";
        std::vector<char> bytes(4);
        const float x = 1.5f;
        std::memcpy(bytes.data(), &x, 4);
        write_bytes(dir.path / "n.f32", bytes);
        CHECK(code_of([&] { read_raw(dir.path / "n.json"); }) == Errc::invariant_violation);
    }
}

TEST_CASE("volume invariants") {
    CHECK(code_of([] { Volume(Shape3{2, 1, 1}, {1, 1, 1}, {0.0}, Domain::mri_raw); }) == Errc::shape_mismatch);
    CHECK(code_of([] { Volume(Shape3{1, 1, 1}, {0, 1, 1}, {0.0}, Domain::mri_raw); }) == Errc::invariant_violation);
    CHECK(code_of([] { Volume(Shape3{1, 1, 1}, {1, 1, 1}, {NAN}, Domain::mri_raw); }) == Errc::invariant_violation);
    CHECK(code_of([] { Volume(Shape3{1, 1, 1}, {1, 1, 1}, {-0.5}, Domain::norm_unit); }) ==
          Errc::invariant_violation);
}
