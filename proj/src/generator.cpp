#include <bms/generator.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace bms {

namespace {

void fail(const std::string& what, const GenState& state) {
    std::ostringstream msg;
    msg << "generator invariant violated at column " << state.t << ": " << what;
    throw InvariantViolation(msg.str());
}

void partition_into(const GenState& state, Partition& out) {
    out.a1.clear();
    out.a2.clear();
    out.a3.clear();
    const Index lower = state.lower_bound();
    const Index upper = state.spec.row_sum();
    const auto rows = static_cast<Index>(state.s.size());
    for (Index i = 0; i < rows; ++i) {
        const Index s = state.s[static_cast<std::size_t>(i)];
        if (s == lower) {
            out.a1.push_back(i);
        } else if (s < upper) {
            out.a2.push_back(i);
        } else {
            out.a3.push_back(i);
        }
    }
}

void check_row_bounds(const GenState& state) {
    const Index lower = state.lower_bound();
    const Index upper = state.spec.row_sum();
    for (std::size_t i = 0; i < state.s.size(); ++i) {
        if (state.s[i] < lower || state.s[i] > upper) {
            std::ostringstream msg;
            msg << "row " << i << " sum " << state.s[i] << " outside [" << lower << ", " << upper << "]";
            fail(msg.str(), state);
        }
    }
}

void check_partition_sizes(const GenState& state, const Partition& part) {
    const Index m = state.spec.rows();
    const Index b = state.spec.col_sum();
    const auto n1 = static_cast<Index>(part.a1.size());
    const auto n3 = static_cast<Index>(part.a3.size());
    if (n1 > b || n3 > m - b) {
        fail("partition sizes exceed column budget", state);
    }
    // Strict whenever some row is still free to choose; with a2 empty both
    // bounds can be tight (n = 4, k = 2, s = (2, 2, 0, 0) at t = 2).
    if (!part.a2.empty() && (n1 >= b || n3 >= m - b)) {
        fail("partition sizes violate strict bounds", state);
    }
}

// Core of step_column with caller-owned scratch buffers.
void step_into(GenState& state, BinaryMatrix& matrix, RngStream& rng, const GenerateOptions& options,
               Partition& part, std::vector<Index>& selected) {
    if (state.t >= state.spec.cols()) {
        fail("no columns left", state);
    }
    if (options.instrumented) {
        check_row_bounds(state);
    }
    partition_into(state, part);
    if (options.instrumented) {
        check_partition_sizes(state, part);
    }

    const Index need = state.spec.col_sum() - static_cast<Index>(part.a1.size());
    auto chosen = random_subset(part.a2, need, rng);

    selected.resize(part.a1.size() + chosen.size());
    std::merge(part.a1.begin(), part.a1.end(), chosen.begin(), chosen.end(), selected.begin());
    if (options.instrumented && static_cast<Index>(selected.size()) != state.spec.col_sum()) {
        fail("selected row count differs from column sum", state);
    }
    if (options.observer) {
        options.observer(state, part, selected);
    }

    for (Index i : selected) {
        matrix.set(i, state.t);
        ++state.s[static_cast<std::size_t>(i)];
    }
    ++state.t;
}

} // namespace

Partition partition_rows(const GenState& state) {
    Partition part;
    partition_into(state, part);
    return part;
}

std::vector<Index> random_subset(std::span<const Index> pool, Index count, RngStream& rng) {
    const auto size = static_cast<Index>(pool.size());
    if (count < 0 || count > size) {
        std::ostringstream msg;
        msg << "cannot draw " << count << " elements from a pool of " << size;
        throw InvariantViolation(msg.str());
    }
    std::vector<Index> work(pool.begin(), pool.end());
    for (Index i = 0; i < count; ++i) {
        const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(size - i)));
        std::swap(work[static_cast<std::size_t>(i)], work[static_cast<std::size_t>(j)]);
    }
    work.resize(static_cast<std::size_t>(count));
    std::sort(work.begin(), work.end());
    return work;
}

std::vector<Index> step_column(GenState& state, BinaryMatrix& matrix, RngStream& rng,
                               const GenerateOptions& options) {
    if (matrix.rows() != state.spec.rows() || matrix.cols() != state.spec.cols()) {
        throw InputError("matrix dimensions differ from generator state");
    }
    if (static_cast<Index>(state.s.size()) != state.spec.rows()) {
        throw InputError("running sums length differs from row count");
    }
    Partition part;
    std::vector<Index> selected;
    step_into(state, matrix, rng, options, part, selected);
    return selected;
}

BinaryMatrix generate(const MagicSpec& spec, std::uint64_t seed, const GenerateOptions& options) {
    require_feasible(spec);
    GenState state(spec);
    BinaryMatrix matrix(spec.rows(), spec.cols());
    RngStream rng(seed);
    Partition part;
    std::vector<Index> selected;
    part.a1.reserve(static_cast<std::size_t>(spec.rows()));
    part.a2.reserve(static_cast<std::size_t>(spec.rows()));
    part.a3.reserve(static_cast<std::size_t>(spec.rows()));
    while (state.t < spec.cols()) {
        step_into(state, matrix, rng, options, part, selected);
    }
    if (options.instrumented) {
        for (std::size_t i = 0; i < state.s.size(); ++i) {
            if (state.s[i] != spec.row_sum()) {
                fail("final row sum differs from row sum target", state);
            }
        }
    }
    return matrix;
}

std::vector<BinaryMatrix> generate_batch(const MagicSpec& spec, const BatchConfig& config) {
    require_feasible(spec);
    if (config.count < 0) {
        throw InputError("batch count must be non-negative");
    }
    const auto count = static_cast<std::size_t>(config.count);
    std::vector<BinaryMatrix> out(count);
    if (count == 0) {
        return out;
    }

    unsigned workers = config.workers != 0 ? config.workers : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::min<std::size_t>(count, 1024)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto job = [&] {
        try {
            for (std::size_t i = next++; i < count; i = next++) {
                out[i] = generate(spec, derive_seed(config.master_seed, i));
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };

    if (workers == 1) {
        job();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(job);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return out;
}

} // namespace bms
