#include <bms/constructive.hpp>

#include <algorithm>
#include <bit>
#include <sstream>

namespace bms {

BinaryMatrix circulant(Index n, Index k) {
    if (n < 1 || n > kMaxDimension) {
        throw InputError("circulant size must be positive");
    }
    if (k < 0 || k > n) {
        std::ostringstream msg;
        msg << "circulant run length must be in [0, " << n << "], got " << k;
        throw InputError(msg.str());
    }
    BinaryMatrix out(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if ((i <= j && j < i + k) || (i <= j + n && j + n < i + k)) {
                out.set(i, j);
            }
        }
    }
    return out;
}

BinaryMatrix tile(const BinaryMatrix& base, Index vertical_reps, Index horizontal_reps) {
    if (base.rows() != base.cols() || base.rows() == 0) {
        throw InputError("tiling base must be a non-empty square matrix");
    }
    if (vertical_reps < 1 || horizontal_reps < 1) {
        throw InputError("tiling repetitions must be positive");
    }
    const Index q = base.rows();
    const auto rows = base.row_sums();
    const auto cols = base.col_sums();
    const Index k = rows.front();
    const auto uniform = [k](Index s) { return s == k; };
    if (!std::all_of(rows.begin(), rows.end(), uniform) || !std::all_of(cols.begin(), cols.end(), uniform)) {
        throw InputError("tiling base must have all row and column sums equal");
    }
    if (q * vertical_reps > kMaxDimension || q * horizontal_reps > kMaxDimension) {
        throw InputError("tiled matrix exceeds maximum dimension");
    }

    BinaryMatrix out(q * vertical_reps, q * horizontal_reps);
    for (Index i = 0; i < q; ++i) {
        auto row = base.row_words(i);
        for (std::size_t w = 0; w < row.size(); ++w) {
            for (auto bits = row[w]; bits != 0; bits &= bits - 1) {
                const Index j = static_cast<Index>(w) * BinaryMatrix::kWordBits + std::countr_zero(bits);
                for (Index v = 0; v < vertical_reps; ++v) {
                    for (Index h = 0; h < horizontal_reps; ++h) {
                        out.set(v * q + i, h * q + j);
                    }
                }
            }
        }
    }
    return out;
}

BinaryMatrix deterministic_rect(const MagicSpec& spec) {
    const auto d = decompose(spec.rows(), spec.cols(), spec.row_sum(), spec.col_sum());
    return tile(circulant(d.q, *d.q_prime), d.m_prime, d.n_prime);
}

} // namespace bms
