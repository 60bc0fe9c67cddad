#pragma once

#include <bms/core.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace bms::bench {

inline constexpr int kMinRepetitions = 5;

struct ScalingEntry {
    Index n = 0;
    Index k = 0;
    double median_seconds = 0.0;
    double matrices_per_second = 0.0;
};

struct ScalingReport {
    /// Ascending in n.
    std::vector<ScalingEntry> entries;
    /// Least-squares slope of log(time) against log(n); absent with fewer
    /// than two distinct sizes.
    std::optional<double> exponent;
};

struct Throughput {
    unsigned workers = 0;
    double matrices_per_second = 0.0;
};

/// Times generate() on n x n squares with k = floor(k_fraction * n). One
/// warm-up run per size is discarded; reps must be at least 5.
ScalingReport measure_scaling(std::span<const Index> sizes, double k_fraction = 0.5, int reps = kMinRepetitions,
                              std::uint64_t seed = 1);

/// Batch throughput for each worker count. Checks that every worker count
/// yields the same matrices before timing anything.
std::vector<Throughput> measure_batch_speedup(const MagicSpec& spec, Index count,
                                              std::span<const unsigned> worker_list, std::uint64_t seed = 1);

/// Slope of the least-squares line through (log x, log y).
std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y);

/// CSV with header "n,k,median_seconds,matrices_per_second", then a
/// "# exponent=<value>" line when the exponent is defined.
void write_csv(std::ostream& out, const ScalingReport& report);
void write_json(std::ostream& out, const ScalingReport& report);

} // namespace bms::bench
