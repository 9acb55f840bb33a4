#pragma once

#include <span>
#include <vector>

namespace vsddpm {

/// q-th percentile (q in [0, 100]) with linear interpolation between order
/// statistics at rank q/100·(n−1). Uses selection, not a full sort.
double percentile(std::span<const double> values, double q);

/// Several percentiles of the same sample.
std::vector<double> percentiles(std::span<const double> values, std::span<const double> qs);

double mean(std::span<const double> values);

/// Population standard deviation (divides by n).
double stddev(std::span<const double> values);

}  // namespace vsddpm
