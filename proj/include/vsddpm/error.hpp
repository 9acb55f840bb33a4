#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vsddpm {

enum class Errc {
    invalid_argument,
    invariant_violation,
    // volume_io
    malformed_header,
    unsupported_datatype,
    unsupported_endianness,
    truncated_payload,
    io_failure,
    sidecar_mismatch,
    // schedule / diffusion / denoiser
    invalid_beta_range,
    step_count_too_large,
    shape_mismatch,
    step_out_of_range,
    degenerate_design,
    empty_dataset,
    // losses
    window_too_large,
    too_many_scales_for_shape,
    extractor_shape_mismatch,
    phase_mismatch,
    epoch_out_of_range,
    // planner / tiler
    window_larger_than_volume,
    invalid_overlap,
    budget_infeasible,
    infeasible_at_minimum_overlap,
    index_out_of_range,
    count_mismatch,
    // normalize
    domain_mismatch,
    zero_std,
    empty_stats_region,
    missing_global_stats,
    stats_mismatch,
    // metrics
    empty_mask,
    // augment
    angle_out_of_range,
    factor_out_of_range,
    negative_sigma,
    order_too_high,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, Errc code, const std::string& what) {
    if (!condition) {
        throw Error(code, what);
    }
}

}  // namespace vsddpm
