#include <bms/core.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace bms {

namespace {

void check_dimension(Index value, const char* name) {
    if (value < 1 || value > kMaxDimension) {
        std::ostringstream msg;
        msg << name << " must be in [1, " << kMaxDimension << "], got " << value;
        throw InputError(msg.str());
    }
}

void check_sum(Index value, Index bound, const char* name) {
    if (value < 0 || value > bound) {
        std::ostringstream msg;
        msg << name << " must be in [0, " << bound << "], got " << value;
        throw InputError(msg.str());
    }
}

void check_args(Index rows_m, Index cols_n, Index row_sum_a, Index col_sum_b) {
    check_dimension(rows_m, "rows");
    check_dimension(cols_n, "cols");
    check_sum(row_sum_a, cols_n, "row sum");
    check_sum(col_sum_b, rows_m, "column sum");
}

std::vector<SumPair> nearest_pairs(Index rows_m, Index cols_n, Index row_sum_a) {
    constexpr std::size_t kMaxListed = 8;
    auto pairs = feasible_pairs(rows_m, cols_n);
    if (pairs.size() <= kMaxListed) {
        return pairs;
    }
    // Pairs are ascending in a; take the window of kMaxListed around row_sum_a.
    auto it = std::lower_bound(pairs.begin(), pairs.end(), row_sum_a,
                               [](const SumPair& p, Index a) { return p.first < a; });
    auto centre = static_cast<std::size_t>(it - pairs.begin());
    std::size_t first = centre > kMaxListed / 2 ? centre - kMaxListed / 2 : 0;
    first = std::min(first, pairs.size() - kMaxListed);
    return {pairs.begin() + static_cast<std::ptrdiff_t>(first),
            pairs.begin() + static_cast<std::ptrdiff_t>(first + kMaxListed)};
}

} // namespace

std::string format_pairs(const std::vector<SumPair>& pairs) {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i) out << ", ";
        out << '(' << pairs[i].first << ',' << pairs[i].second << ')';
    }
    out << ']';
    return out.str();
}

FeasibilityError::FeasibilityError(Index rows, Index cols, Index row_sum, Index col_sum,
                                   std::vector<SumPair> nearest)
    : std::domain_error([&] {
          std::ostringstream msg;
          msg << "no " << rows << "x" << cols << " binary matrix has row sum " << row_sum
              << " and column sum " << col_sum << "; feasible (row sum, column sum) pairs: "
              << format_pairs(nearest);
          return msg.str();
      }()),
      nearest_(std::move(nearest)) {}

MagicSpec::MagicSpec(Index rows_m, Index cols_n, Index row_sum_a, Index col_sum_b)
    : rows_(rows_m), cols_(cols_n), row_sum_(row_sum_a), col_sum_(col_sum_b) {
    check_args(rows_m, cols_n, row_sum_a, col_sum_b);
}

BinaryMatrix::BinaryMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), words_per_row_((cols + kWordBits - 1) / kWordBits) {
    if (rows < 0 || cols < 0) {
        throw InputError("matrix dimensions must be non-negative");
    }
    words_.assign(static_cast<std::size_t>(rows_ * words_per_row_), Word{0});
}

BinaryMatrix::Word BinaryMatrix::tail_mask() const noexcept {
    const Index used = cols_ % kWordBits;
    return used == 0 ? ~Word{0} : (Word{1} << used) - 1;
}

Index BinaryMatrix::row_sum(Index i) const noexcept {
    Index total = 0;
    for (Word w : row_words(i)) {
        total += std::popcount(w);
    }
    return total;
}

std::vector<Index> BinaryMatrix::row_sums() const {
    std::vector<Index> sums(static_cast<std::size_t>(rows_));
    for (Index i = 0; i < rows_; ++i) {
        sums[static_cast<std::size_t>(i)] = row_sum(i);
    }
    return sums;
}

std::vector<Index> BinaryMatrix::col_sums() const {
    std::vector<Index> sums(static_cast<std::size_t>(cols_), 0);
    for (Index i = 0; i < rows_; ++i) {
        auto row = row_words(i);
        for (std::size_t w = 0; w < row.size(); ++w) {
            for (Word bits = row[w]; bits != 0; bits &= bits - 1) {
                ++sums[w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits))];
            }
        }
    }
    return sums;
}

std::strong_ordering operator<=>(const BinaryMatrix& lhs, const BinaryMatrix& rhs) {
    if (auto c = lhs.rows_ <=> rhs.rows_; c != 0) return c;
    if (auto c = lhs.cols_ <=> rhs.cols_; c != 0) return c;
    return std::lexicographical_compare_three_way(lhs.words_.begin(), lhs.words_.end(),
                                                  rhs.words_.begin(), rhs.words_.end());
}

ValidationReport validate(const BinaryMatrix& matrix, const MagicSpec& spec) {
    if (matrix.rows() != spec.rows() || matrix.cols() != spec.cols()) {
        std::ostringstream msg;
        msg << "matrix is " << matrix.rows() << "x" << matrix.cols() << " but spec is "
            << spec.rows() << "x" << spec.cols();
        throw InputError(msg.str());
    }
    ValidationReport report;
    report.row_sums = matrix.row_sums();
    report.col_sums = matrix.col_sums();
    for (std::size_t i = 0; i < report.row_sums.size() && !report.first_violation; ++i) {
        if (report.row_sums[i] != spec.row_sum()) {
            report.first_violation =
                Violation{Axis::row, static_cast<Index>(i), report.row_sums[i], spec.row_sum()};
        }
    }
    for (std::size_t j = 0; j < report.col_sums.size() && !report.first_violation; ++j) {
        if (report.col_sums[j] != spec.col_sum()) {
            report.first_violation =
                Violation{Axis::column, static_cast<Index>(j), report.col_sums[j], spec.col_sum()};
        }
    }
    report.is_valid = !report.first_violation.has_value();
    return report;
}

bool is_feasible(Index rows_m, Index cols_n, Index row_sum_a, Index col_sum_b) {
    check_args(rows_m, cols_n, row_sum_a, col_sum_b);
    return row_sum_a * rows_m == col_sum_b * cols_n;
}

bool is_feasible(const MagicSpec& spec) {
    return spec.row_sum() * spec.rows() == spec.col_sum() * spec.cols();
}

std::vector<SumPair> feasible_pairs(Index rows_m, Index cols_n) {
    const auto d = decompose(rows_m, cols_n);
    std::vector<SumPair> pairs;
    pairs.reserve(static_cast<std::size_t>(d.q + 1));
    for (Index qp = 0; qp <= d.q; ++qp) {
        pairs.emplace_back(qp * d.n_prime, qp * d.m_prime);
    }
    return pairs;
}

GcdDecomposition decompose(Index rows_m, Index cols_n) {
    check_dimension(rows_m, "rows");
    check_dimension(cols_n, "cols");
    const Index q = std::gcd(rows_m, cols_n);
    return {q, rows_m / q, cols_n / q, std::nullopt};
}

GcdDecomposition decompose(Index rows_m, Index cols_n, Index row_sum_a, Index col_sum_b) {
    if (!is_feasible(rows_m, cols_n, row_sum_a, col_sum_b)) {
        throw FeasibilityError(rows_m, cols_n, row_sum_a, col_sum_b,
                               nearest_pairs(rows_m, cols_n, row_sum_a));
    }
    auto d = decompose(rows_m, cols_n);
    // a m = b n with gcd(m', n') = 1 forces n' | a.
    d.q_prime = row_sum_a / d.n_prime;
    return d;
}

void require_feasible(const MagicSpec& spec) {
    if (!is_feasible(spec)) {
        throw FeasibilityError(spec.rows(), spec.cols(), spec.row_sum(), spec.col_sum(),
                               nearest_pairs(spec.rows(), spec.cols(), spec.row_sum()));
    }
}

BinaryMatrix complement(const BinaryMatrix& matrix) {
    BinaryMatrix out(matrix.rows(), matrix.cols());
    const auto tail = matrix.tail_mask();
    for (Index i = 0; i < matrix.rows(); ++i) {
        auto src = matrix.row_words(i);
        auto dst = out.row_words(i);
        for (std::size_t w = 0; w < src.size(); ++w) {
            dst[w] = ~src[w];
        }
        if (!dst.empty()) {
            dst.back() &= tail;
        }
    }
    return out;
}

BinaryMatrix transpose(const BinaryMatrix& matrix) {
    BinaryMatrix out(matrix.cols(), matrix.rows());
    for (Index i = 0; i < matrix.rows(); ++i) {
        auto row = matrix.row_words(i);
        for (std::size_t w = 0; w < row.size(); ++w) {
            for (auto bits = row[w]; bits != 0; bits &= bits - 1) {
                const auto j = static_cast<Index>(w) * BinaryMatrix::kWordBits + std::countr_zero(bits);
                out.set(j, i);
            }
        }
    }
    return out;
}

} // namespace bms
