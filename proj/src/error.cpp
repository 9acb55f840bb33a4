#include "vsddpm/error.hpp"

namespace vsddpm {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::invalid_argument: return "InvalidArgument";
        case Errc::invariant_violation: return "InvariantViolation";
        case Errc::malformed_header: return "MalformedHeader";
        case Errc::unsupported_datatype: return "UnsupportedDatatype";
        case Errc::unsupported_endianness: return "UnsupportedEndianness";
        case Errc::truncated_payload: return "TruncatedPayload";
        case Errc::io_failure: return "IoFailure";
        case Errc::sidecar_mismatch: return "SidecarMismatch";
        case Errc::invalid_beta_range: return "InvalidBetaRange";
        case Errc::step_count_too_large: return "StepCountTooLarge";
        case Errc::shape_mismatch: return "ShapeMismatch";
        case Errc::step_out_of_range: return "StepOutOfRange";
        case Errc::degenerate_design: return "DegenerateDesign";
        case Errc::empty_dataset: return "EmptyDataset";
        case Errc::window_too_large: return "WindowTooLarge";
        case Errc::too_many_scales_for_shape: return "TooManyScalesForShape";
        case Errc::extractor_shape_mismatch: return "ExtractorShapeMismatch";
        case Errc::phase_mismatch: return "PhaseMismatch";
        case Errc::epoch_out_of_range: return "EpochOutOfRange";
        case Errc::window_larger_than_volume: return "WindowLargerThanVolume";
        case Errc::invalid_overlap: return "InvalidOverlap";
        case Errc::budget_infeasible: return "BudgetInfeasible";
        case Errc::infeasible_at_minimum_overlap: return "InfeasibleAtMinimumOverlap";
        case Errc::index_out_of_range: return "IndexOutOfRange";
        case Errc::count_mismatch: return "CountMismatch";
        case Errc::domain_mismatch: return "DomainMismatch";
        case Errc::zero_std: return "ZeroStd";
        case Errc::empty_stats_region: return "EmptyStatsRegion";
        case Errc::missing_global_stats: return "MissingGlobalStats";
        case Errc::stats_mismatch: return "StatsMismatch";
        case Errc::empty_mask: return "EmptyMask";
        case Errc::angle_out_of_range: return "AngleOutOfRange";
        case Errc::factor_out_of_range: return "FactorOutOfRange";
        case Errc::negative_sigma: return "NegativeSigma";
        case Errc::order_too_high: return "OrderTooHigh";
    }
    return "Unknown";
}

}  // namespace vsddpm
