#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vsddpm {

using Shape3 = std::array<std::size_t, 3>;
using Index3 = std::array<std::size_t, 3>;

inline std::size_t voxel_count(const Shape3& shape) { return shape[0] * shape[1] * shape[2]; }

std::string to_string(const Shape3& shape);

/// Dense row-major 3D array of doubles; the last axis is contiguous.
class Grid {
public:
    Grid() = default;
    explicit Grid(Shape3 shape, double fill = 0.0);
    Grid(Shape3 shape, std::vector<double> data);

    const Shape3& shape() const noexcept { return shape_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    std::size_t offset(std::size_t i, std::size_t j, std::size_t k) const noexcept {
        return (i * shape_[1] + j) * shape_[2] + k;
    }

    double& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept { return data_[offset(i, j, k)]; }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept { return data_[offset(i, j, k)]; }
    double& operator[](std::size_t n) noexcept { return data_[n]; }
    double operator[](std::size_t n) const noexcept { return data_[n]; }

    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }
    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double> release() && { return std::move(data_); }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

private:
    Shape3 shape_{0, 0, 0};
    std::vector<double> data_;
};

/// Throws Errc::shape_mismatch naming `what` when the shapes differ.
void require_same_shape(const Shape3& a, const Shape3& b, const char* what);

}  // namespace vsddpm
