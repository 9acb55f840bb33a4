#include "vsddpm/volume.hpp"

#include <algorithm>
#include <cmath>

#include "vsddpm/error.hpp"

namespace vsddpm {

namespace {

void check_geometry(const Shape3& shape, const Spacing3& spacing) {
    for (int d = 0; d < 3; ++d) {
        require(shape[d] > 0, Errc::invariant_violation, "shape must be positive, got " + to_string(shape));
        require(std::isfinite(spacing[d]) && spacing[d] > 0.0, Errc::invariant_violation,
                "spacing must be positive and finite");
    }
}

}  // namespace

std::string_view domain_name(Domain d) noexcept {
    switch (d) {
        case Domain::hu: return "hu";
        case Domain::mri_raw: return "mri_raw";
        case Domain::norm_sym: return "norm_sym";
        case Domain::norm_unit: return "norm_unit";
    }
    return "mri_raw";
}

std::optional<Domain> parse_domain(std::string_view name) noexcept {
    for (Domain d : {Domain::hu, Domain::mri_raw, Domain::norm_sym, Domain::norm_unit}) {
        if (domain_name(d) == name) {
            return d;
        }
    }
    return std::nullopt;
}

std::optional<std::array<double, 2>> domain_range(Domain d) noexcept {
    switch (d) {
        case Domain::norm_sym: return std::array<double, 2>{-1.0, 1.0};
        case Domain::norm_unit: return std::array<double, 2>{0.0, 1.0};
        default: return std::nullopt;
    }
}

Volume::Volume(Grid grid, Spacing3 spacing, Domain domain)
    : grid_(std::move(grid)), spacing_(spacing), domain_(domain) {
    check_geometry(grid_.shape(), spacing_);
    const auto range = domain_range(domain_);
    for (std::size_t n = 0; n < grid_.size(); ++n) {
        const double x = grid_[n];
        require(std::isfinite(x), Errc::invariant_violation,
                "non-finite value at element " + std::to_string(n));
        if (range && (x < (*range)[0] || x > (*range)[1])) {
            fail(Errc::invariant_violation, "value " + std::to_string(x) + " at element " + std::to_string(n) +
                                                " outside the " + std::string(domain_name(domain_)) + " range");
        }
    }
}

Volume::Volume(Shape3 shape, Spacing3 spacing, std::vector<double> data, Domain domain)
    : Volume(Grid(shape, std::move(data)), spacing, domain) {}

Mask::Mask(Shape3 shape, Spacing3 spacing, std::vector<std::uint8_t> bits)
    : shape_(shape), spacing_(spacing), bits_(std::move(bits)) {
    check_geometry(shape_, spacing_);
    require(bits_.size() == voxel_count(shape_), Errc::invariant_violation, "mask size does not match shape");
    require(std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b <= 1; }),
            Errc::invariant_violation, "mask values must be 0 or 1");
}

Mask::Mask(Shape3 shape, Spacing3 spacing) : Mask(shape, spacing, std::vector<std::uint8_t>(voxel_count(shape), 0)) {}

Mask Mask::from_threshold(const Volume& v, double threshold) {
    std::vector<std::uint8_t> bits(v.size());
    std::transform(v.values().begin(), v.values().end(), bits.begin(),
                   [threshold](double x) { return static_cast<std::uint8_t>(x > threshold ? 1 : 0); });
    return Mask(v.shape(), v.spacing(), std::move(bits));
}

std::size_t Mask::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

}  // namespace vsddpm
