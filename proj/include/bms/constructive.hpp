#pragma once

#include <bms/core.hpp>

namespace bms {

/// n x n matrix with (i, j) = 1 iff i <= j < i + k or i <= j + n < i + k:
/// each row is a run of k ones starting on the diagonal, wrapping around.
BinaryMatrix circulant(Index n, Index k);

/// Repeats a square matrix with constant margins vertical_reps times down
/// and horizontal_reps times across.
BinaryMatrix tile(const BinaryMatrix& base, Index vertical_reps, Index horizontal_reps);

/// Seed-free witness for a feasible spec: circulant(q, q') tiled m' x n'.
BinaryMatrix deterministic_rect(const MagicSpec& spec);

} // namespace bms
