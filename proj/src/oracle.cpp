#include <bms/oracle.hpp>

#include <array>
#include <bit>
#include <sstream>

namespace bms::oracle {

namespace {

using Mask = std::uint64_t;

class Search {
public:
    Search(const MagicSpec& spec, std::size_t collect_limit, bool stop_at_first)
        : spec_(spec), collect_limit_(collect_limit), stop_at_first_(stop_at_first),
          current_(spec.rows(), spec.cols()) {
        const Index n = spec.cols();
        // Ascending mask order makes the search emit matrices in canonical order.
        for (Mask mask = 0; mask < (Mask{1} << n); ++mask) {
            if (std::popcount(mask) == spec.row_sum()) {
                row_choices_.push_back(mask);
            }
        }
        capacity_.fill(0);
        for (Index j = 0; j < n; ++j) {
            capacity_[static_cast<std::size_t>(j)] = spec.col_sum();
        }
    }

    EnumerationResult run() {
        descend(0);
        return std::move(result_);
    }

private:
    bool done() const { return stop_at_first_ && result_.count > 0; }

    void descend(Index row) {
        const Index rows_left = spec_.rows() - row;
        Index remaining = 0;
        for (Index j = 0; j < spec_.cols(); ++j) {
            const Index c = capacity_[static_cast<std::size_t>(j)];
            if (c > rows_left) {
                return;
            }
            remaining += c;
        }
        if (rows_left * spec_.row_sum() != remaining) {
            return;
        }
        if (rows_left == 0) {
            ++result_.count;
            if (result_.matrices.size() < collect_limit_) {
                result_.matrices.push_back(current_);
            }
            return;
        }
        for (Mask mask : row_choices_) {
            if (!fits(mask)) {
                continue;
            }
            place(row, mask, -1);
            descend(row + 1);
            place(row, mask, +1);
            if (done()) {
                return;
            }
        }
    }

    bool fits(Mask mask) const {
        for (Mask bits = mask; bits != 0; bits &= bits - 1) {
            if (capacity_[static_cast<std::size_t>(std::countr_zero(bits))] == 0) {
                return false;
            }
        }
        return true;
    }

    // delta = -1 places the row, +1 removes it.
    void place(Index row, Mask mask, Index delta) {
        current_.row_words(row)[0] = delta < 0 ? mask : 0;
        for (Mask bits = mask; bits != 0; bits &= bits - 1) {
            capacity_[static_cast<std::size_t>(std::countr_zero(bits))] += delta;
        }
    }

    MagicSpec spec_;
    std::size_t collect_limit_;
    bool stop_at_first_;
    BinaryMatrix current_;
    std::vector<Mask> row_choices_;
    std::array<Index, kMaxOracleDimension> capacity_{};
    EnumerationResult result_;
};

void check_guard(const MagicSpec& spec) {
    if (spec.rows() > kMaxOracleDimension || spec.cols() > kMaxOracleDimension) {
        std::ostringstream msg;
        msg << "exhaustive enumeration is limited to " << kMaxOracleDimension << "x"
            << kMaxOracleDimension << " instances, got " << spec.rows() << "x" << spec.cols();
        throw SizeError(msg.str());
    }
}

} // namespace

EnumerationResult enumerate(const MagicSpec& spec, std::size_t collect_limit) {
    check_guard(spec);
    return Search(spec, collect_limit, false).run();
}

bool exists(Index rows_m, Index cols_n, Index row_sum_a, Index col_sum_b) {
    const MagicSpec spec(rows_m, cols_n, row_sum_a, col_sum_b);
    check_guard(spec);
    return Search(spec, 0, true).run().count > 0;
}

} // namespace bms::oracle
