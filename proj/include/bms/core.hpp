#pragma once

#include <bms/errors.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bms {

/// Largest accepted row or column count. Keeps a * m within 64 bits.
inline constexpr Index kMaxDimension = Index{1} << 20;

/// Problem parameters: an m x n binary matrix whose rows all sum to a and
/// whose columns all sum to b. Construction checks ranges only; use
/// is_feasible() to ask whether such a matrix exists.
class MagicSpec {
public:
    MagicSpec(Index rows_m, Index cols_n, Index row_sum_a, Index col_sum_b);

    /// n x n with every row and column summing to k.
    static MagicSpec square(Index n, Index k) { return {n, n, k, k}; }

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    Index row_sum() const noexcept { return row_sum_; }
    Index col_sum() const noexcept { return col_sum_; }

    bool is_square() const noexcept { return rows_ == cols_ && row_sum_ == col_sum_; }

    friend bool operator==(const MagicSpec&, const MagicSpec&) = default;

private:
    Index rows_;
    Index cols_;
    Index row_sum_;
    Index col_sum_;
};

/// Dense 0/1 matrix, row-major, 64 entries per word. Bit j % 64 of word
/// j / 64 in row i holds entry (i, j); padding bits past cols() stay zero.
class BinaryMatrix {
public:
    using Word = std::uint64_t;
    static constexpr Index kWordBits = 64;

    BinaryMatrix() = default;
    BinaryMatrix(Index rows, Index cols);

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    Index words_per_row() const noexcept { return words_per_row_; }

    bool operator()(Index i, Index j) const noexcept {
        return (words_[word_index(i, j)] >> (j % kWordBits)) & Word{1};
    }

    void set(Index i, Index j, bool value = true) noexcept {
        const Word mask = Word{1} << (j % kWordBits);
        Word& w = words_[word_index(i, j)];
        w = value ? (w | mask) : (w & ~mask);
    }

    std::span<const Word> row_words(Index i) const noexcept {
        return {words_.data() + i * words_per_row_, static_cast<std::size_t>(words_per_row_)};
    }
    std::span<Word> row_words(Index i) noexcept {
        return {words_.data() + i * words_per_row_, static_cast<std::size_t>(words_per_row_)};
    }
    std::span<const Word> words() const noexcept { return words_; }

    Index row_sum(Index i) const noexcept;
    std::vector<Index> row_sums() const;
    std::vector<Index> col_sums() const;

    /// Mask of the valid bits in the last word of each row.
    Word tail_mask() const noexcept;

    friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;
    /// Dimensions first, then lexicographic over packed row words.
    friend std::strong_ordering operator<=>(const BinaryMatrix& lhs, const BinaryMatrix& rhs);

private:
    std::size_t word_index(Index i, Index j) const noexcept {
        return static_cast<std::size_t>(i * words_per_row_ + j / kWordBits);
    }

    Index rows_ = 0;
    Index cols_ = 0;
    Index words_per_row_ = 0;
    std::vector<Word> words_;
};

enum class Axis { row, column };

struct Violation {
    Axis axis;
    Index index;
    Index observed;
    Index expected;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    bool is_valid = false;
    std::vector<Index> row_sums;
    std::vector<Index> col_sums;
    /// First failing row, else first failing column.
    std::optional<Violation> first_violation;
};

/// q = gcd(m, n), m = q m', n = q n'. For a feasible (a, b) also
/// a = q' n' and b = q' m'.
struct GcdDecomposition {
    Index q = 0;
    Index m_prime = 0;
    Index n_prime = 0;
    std::optional<Index> q_prime;

    friend bool operator==(const GcdDecomposition&, const GcdDecomposition&) = default;
};

ValidationReport validate(const BinaryMatrix& matrix, const MagicSpec& spec);

/// True iff an m x n binary matrix with row sums a and column sums b exists,
/// which holds exactly when a * m == b * n. Throws InputError on
/// out-of-range arguments.
bool is_feasible(Index rows_m, Index cols_n, Index row_sum_a, Index col_sum_b);
bool is_feasible(const MagicSpec& spec);

/// All (a, b) admitting an m x n matrix, ascending: (q' n', q' m') for
/// q' = 0..gcd(m, n).
std::vector<SumPair> feasible_pairs(Index rows_m, Index cols_n);

GcdDecomposition decompose(Index rows_m, Index cols_n);
GcdDecomposition decompose(Index rows_m, Index cols_n, Index row_sum_a, Index col_sum_b);

/// Throws FeasibilityError (with the nearest feasible pairs) if spec is infeasible.
void require_feasible(const MagicSpec& spec);

BinaryMatrix complement(const BinaryMatrix& matrix);
BinaryMatrix transpose(const BinaryMatrix& matrix);

} // namespace bms
