#pragma once

#include <bms/core.hpp>

#include <cstdint>
#include <vector>

namespace bms::oracle {

/// Exhaustive search handles at most this many rows and columns.
inline constexpr Index kMaxOracleDimension = 6;
inline constexpr std::size_t kDefaultCollectLimit = 10'000;

struct EnumerationResult {
    /// Exact number of matrices with the requested margins.
    std::uint64_t count = 0;
    /// First matrices in canonical (lexicographic packed-row) order, up to
    /// the collect limit.
    std::vector<BinaryMatrix> matrices;
};

/// Row-by-row backtracking over every 0/1 matrix with row sums a and
/// column sums b. Throws SizeError beyond the 6 x 6 guard.
EnumerationResult enumerate(const MagicSpec& spec, std::size_t collect_limit = kDefaultCollectLimit);

/// True iff enumerate() would find at least one matrix; stops at the first.
bool exists(Index rows_m, Index cols_n, Index row_sum_a, Index col_sum_b);

} // namespace bms::oracle
