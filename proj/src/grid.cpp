#include "vsddpm/grid.hpp"

#include "vsddpm/error.hpp"

namespace vsddpm {

std::string to_string(const Shape3& shape) {
    return std::to_string(shape[0]) + "x" + std::to_string(shape[1]) + "x" + std::to_string(shape[2]);
}

Grid::Grid(Shape3 shape, double fill) : shape_(shape), data_(voxel_count(shape), fill) {}

Grid::Grid(Shape3 shape, std::vector<double> data) : shape_(shape), data_(std::move(data)) {
    require(data_.size() == voxel_count(shape_), Errc::shape_mismatch,
            "grid of shape " + to_string(shape_) + " given " + std::to_string(data_.size()) + " values");
}

void require_same_shape(const Shape3& a, const Shape3& b, const char* what) {
    if (a != b) {
        fail(Errc::shape_mismatch, std::string(what) + ": " + to_string(a) + " vs " + to_string(b));
    }
}

}  // namespace vsddpm
