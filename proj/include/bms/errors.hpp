#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bms {

using Index = std::int64_t;

/// (row_sum_a, col_sum_b)
using SumPair = std::pair<Index, Index>;

/// Malformed arguments: out-of-range sums, bad dimensions, mismatched shapes.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested margins admit no binary matrix. Carries the feasible
/// (a, b) pairs closest to the request so callers can suggest alternatives.
class FeasibilityError : public std::domain_error {
public:
    FeasibilityError(Index rows, Index cols, Index row_sum, Index col_sum,
                     std::vector<SumPair> nearest);

    const std::vector<SumPair>& nearest_pairs() const noexcept { return nearest_; }

private:
    std::vector<SumPair> nearest_;
};

/// Instance exceeds the exhaustive-enumeration size guard.
class SizeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A generation-step invariant failed; indicates a corrupted state.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Input text does not parse in the declared format.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string format_pairs(const std::vector<SumPair>& pairs);

} // namespace bms
