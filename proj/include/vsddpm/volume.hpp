#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsddpm/grid.hpp"

namespace vsddpm {

using Spacing3 = std::array<double, 3>;

/// Intensity domain of a volume. The normalized domains carry range invariants.
enum class Domain { hu, mri_raw, norm_sym, norm_unit };

std::string_view domain_name(Domain d) noexcept;
std::optional<Domain> parse_domain(std::string_view name) noexcept;

/// Closed value range a domain imposes, if any.
std::optional<std::array<double, 2>> domain_range(Domain d) noexcept;

/// Immutable 3D scalar volume. Construction validates shape, spacing, finiteness
/// and the domain range; violations throw Errc::invariant_violation.
class Volume {
public:
    Volume(Grid grid, Spacing3 spacing, Domain domain);
    Volume(Shape3 shape, Spacing3 spacing, std::vector<double> data, Domain domain);

    const Shape3& shape() const noexcept { return grid_.shape(); }
    const Spacing3& spacing() const noexcept { return spacing_; }
    Domain domain() const noexcept { return domain_; }
    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return grid_.values(); }
    std::size_t size() const noexcept { return grid_.size(); }

    double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept { return grid_(i, j, k); }

    /// Copy with different values, same geometry.
    Volume with_grid(Grid grid) const { return Volume(std::move(grid), spacing_, domain_); }
    Volume with_grid(Grid grid, Domain domain) const { return Volume(std::move(grid), spacing_, domain); }

private:
    Grid grid_;
    Spacing3 spacing_;
    Domain domain_;
};

/// Binary voxel mask with the same geometry conventions as Volume.
class Mask {
public:
    Mask(Shape3 shape, Spacing3 spacing, std::vector<std::uint8_t> bits);
    Mask(Shape3 shape, Spacing3 spacing);

    /// Voxels strictly above `threshold`.
    static Mask from_threshold(const Volume& v, double threshold);

    const Shape3& shape() const noexcept { return shape_; }
    const Spacing3& spacing() const noexcept { return spacing_; }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
    std::size_t size() const noexcept { return bits_.size(); }
    std::size_t count() const noexcept;
    bool empty_set() const noexcept { return count() == 0; }

    bool operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept {
        return bits_[(i * shape_[1] + j) * shape_[2] + k] != 0;
    }
    void set(std::size_t i, std::size_t j, std::size_t k, bool on = true) noexcept {
        bits_[(i * shape_[1] + j) * shape_[2] + k] = on ? 1 : 0;
    }
    bool operator[](std::size_t n) const noexcept { return bits_[n] != 0; }

private:
    Shape3 shape_;
    Spacing3 spacing_;
    std::vector<std::uint8_t> bits_;
};

}  // namespace vsddpm
