#pragma once

#include <bms/core.hpp>
#include <bms/rng.hpp>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#ifndef BMS_INSTRUMENTED_DEFAULT
#define BMS_INSTRUMENTED_DEFAULT 0
#endif

namespace bms {

/// Running state of the column-by-column generator. After t columns,
/// s[i] is the number of ones written to row i and
///     a + t - n <= s[i] <= a
/// holds for every row.
struct GenState {
    explicit GenState(const MagicSpec& spec)
        : spec(spec), s(static_cast<std::size_t>(spec.rows()), 0) {}

    MagicSpec spec;
    Index t = 0;
    std::vector<Index> s;

    /// a + t - n
    Index lower_bound() const noexcept { return spec.row_sum() + t - spec.cols(); }
};

/// Rows split by running sum: must-select (s = a + t - n), may-select
/// (strictly between) and done (s = a). Each set ascending.
struct Partition {
    std::vector<Index> a1;
    std::vector<Index> a2;
    std::vector<Index> a3;

    friend bool operator==(const Partition&, const Partition&) = default;
};

/// Called after every column with the partition that drove it and the
/// selected rows (ascending). For tests and tracing.
using StepObserver =
    std::function<void(const GenState& before, const Partition&, std::span<const Index> selected)>;

struct GenerateOptions {
    /// Check the running-sum bounds, partition-size bounds and |E| = b at
    /// every column, throwing InvariantViolation on failure.
    bool instrumented = BMS_INSTRUMENTED_DEFAULT != 0;
    StepObserver observer;
};

Partition partition_rows(const GenState& state);

/// `count` distinct elements of `pool` by partial Fisher-Yates over the
/// pool in the order given, one rng.below() draw per swap. Returned ascending.
/// Throws InvariantViolation if count is negative or exceeds the pool.
std::vector<Index> random_subset(std::span<const Index> pool, Index count, RngStream& rng);

/// Writes column state.t: selects E = a1 + random_subset(a2, b - |a1|), sets
/// those bits, bumps their running sums and advances t. Returns E.
std::vector<Index> step_column(GenState& state, BinaryMatrix& matrix, RngStream& rng,
                               const GenerateOptions& options = {});

/// Random m x n binary matrix with every row summing to a and every column
/// summing to b. Deterministic in (spec, seed). Throws FeasibilityError
/// when a * m != b * n.
BinaryMatrix generate(const MagicSpec& spec, std::uint64_t seed, const GenerateOptions& options = {});

struct BatchConfig {
    Index count = 0;
    std::uint64_t master_seed = 0;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;
};

/// config.count matrices; matrix i is generate(spec, derive_seed(master_seed, i)).
/// Output does not depend on the worker count.
std::vector<BinaryMatrix> generate_batch(const MagicSpec& spec, const BatchConfig& config);

} // namespace bms
