#include "vsddpm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vsddpm/error.hpp"

namespace vsddpm {

namespace {

double select_percentile(std::vector<double>& work, double q) {
    require(q >= 0.0 && q <= 100.0, Errc::invalid_argument, "percentile level must lie in [0, 100]");
    const double rank = q / 100.0 * static_cast<double>(work.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const double frac = rank - static_cast<double>(lo);
    std::nth_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(lo), work.end());
    const double a = work[lo];
    if (frac == 0.0 || lo + 1 >= work.size()) {
        return a;
    }
    // Next order statistic is the minimum of the upper partition.
    const double b = *std::min_element(work.begin() + static_cast<std::ptrdiff_t>(lo) + 1, work.end());
    return a + frac * (b - a);
}

}  // namespace

double percentile(std::span<const double> values, double q) {
    require(!values.empty(), Errc::invalid_argument, "percentile of an empty sample");
    std::vector<double> work(values.begin(), values.end());
    return select_percentile(work, q);
}

std::vector<double> percentiles(std::span<const double> values, std::span<const double> qs) {
    require(!values.empty(), Errc::invalid_argument, "percentile of an empty sample");
    std::vector<double> work(values.begin(), values.end());
    std::vector<double> out;
    out.reserve(qs.size());
    for (double q : qs) {
        out.push_back(select_percentile(work, q));
    }
    return out;
}

double mean(std::span<const double> values) {
    require(!values.empty(), Errc::invalid_argument, "mean of an empty sample");
    double sum = 0.0;
    for (double x : values) {
        sum += x;
    }
    return sum / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
    const double m = mean(values);
    double ss = 0.0;
    for (double x : values) {
        ss += (x - m) * (x - m);
    }
    return std::sqrt(ss / static_cast<double>(values.size()));
}

}  // namespace vsddpm
