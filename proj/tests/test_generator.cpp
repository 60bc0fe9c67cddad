#include <doctest.h>

#include "test_helpers.hpp"

#include <bms/generator.hpp>
#include <bms/oracle.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

using namespace bms;

namespace {

GenState state_with(const MagicSpec& spec, Index t, std::vector<Index> s) {
    GenState state(spec);
    state.t = t;
    state.s = std::move(s);
    return state;
}

} // namespace

TEST_CASE("partition_rows") {
    SUBCASE("t = 0 with 0 < k < n puts every row in a2") {
        const auto p = partition_rows(GenState(MagicSpec::square(5, 2)));
        CHECK(p.a1.empty());
        CHECK(p.a2 == std::vector<Index>{0, 1, 2, 3, 4});
        CHECK(p.a3.empty());
    }
    SUBCASE("t = 0 with k = n puts every row in a1") {
        const auto p = partition_rows(GenState(MagicSpec::square(4, 4)));
        CHECK(p.a1 == std::vector<Index>{0, 1, 2, 3});
        CHECK(p.a2.empty());
        CHECK(p.a3.empty());
    }
    SUBCASE("t = 0 with k = 0 puts every row in a3") {
        const auto p = partition_rows(GenState(MagicSpec::square(3, 0)));
        CHECK(p.a1.empty());
        CHECK(p.a2.empty());
        CHECK(p.a3 == std::vector<Index>{0, 1, 2});
    }
    SUBCASE("n = 4, k = 2, t = 2, s = (2, 1, 0, 1)") {
        const auto p = partition_rows(state_with(MagicSpec::square(4, 2), 2, {2, 1, 0, 1}));
        CHECK(p.a1 == std::vector<Index>{2});
        CHECK(p.a2 == std::vector<Index>{1, 3});
        CHECK(p.a3 == std::vector<Index>{0});
    }
}

TEST_CASE("random_subset") {
    const std::vector<Index> pool{0, 1, 2, 3};
    RngStream rng(1);
    CHECK(random_subset(pool, 0, rng).empty());
    CHECK(random_subset(pool, 4, rng) == pool);
    CHECK_THROWS_AS(random_subset(pool, 5, rng), InvariantViolation);
    CHECK_THROWS_AS(random_subset(pool, -1, rng), InvariantViolation);

    // Golden value from the Python reference implementation.
    const std::vector<Index> five{0, 1, 2, 3, 4};
    RngStream seeded(42);
    CHECK(random_subset(five, 2, seeded) == std::vector<Index>{2, 3});

    SUBCASE("elements come from the pool, distinct and sorted") {
        const std::vector<Index> sparse{3, 8, 11, 20, 21, 40};
        RngStream r(9);
        for (Index c = 0; c <= 6; ++c) {
            const auto sub = random_subset(sparse, c, r);
            CHECK(static_cast<Index>(sub.size()) == c);
            CHECK(std::is_sorted(sub.begin(), sub.end()));
            CHECK(std::set<Index>(sub.begin(), sub.end()).size() == sub.size());
            for (Index x : sub) CHECK(std::find(sparse.begin(), sparse.end(), x) != sparse.end());
        }
    }
    SUBCASE("every 2-subset of 4 appears with roughly equal frequency") {
        std::map<std::vector<Index>, int> freq;
        RngStream r(2024);
        for (int i = 0; i < 6000; ++i) ++freq[random_subset(pool, 2, r)];
        CHECK(freq.size() == 6);
        for (const auto& [sub, count] : freq) CHECK(std::abs(count - 1000) < 200);
    }
}

TEST_CASE("step_column") {
    SUBCASE("n = 3, k = 3 selects every row") {
        GenState state(MagicSpec::square(3, 3));
        BinaryMatrix m(3, 3);
        RngStream rng(0);
        CHECK(step_column(state, m, rng) == std::vector<Index>{0, 1, 2});
        CHECK(state.t == 1);
        CHECK(state.s == std::vector<Index>{1, 1, 1});
        CHECK((m(0, 0) && m(1, 0) && m(2, 0)));
    }
    SUBCASE("n = 2, k = 1, t = 1, s = (1, 0) forces row 1") {
        auto state = state_with(MagicSpec::square(2, 1), 1, {1, 0});
        const auto p = partition_rows(state);
        CHECK(p.a1 == std::vector<Index>{1});
        CHECK(p.a3 == std::vector<Index>{0});
        BinaryMatrix m(2, 2);
        m.set(0, 0);
        RngStream rng(0);
        CHECK(step_column(state, m, rng, {.instrumented = true}) == std::vector<Index>{1});
        CHECK(m == test::identity(2));
    }
    SUBCASE("corrupted state with too many forced rows trips") {
        auto state = state_with(MagicSpec::square(4, 2), 2, {0, 0, 0, 0});
        BinaryMatrix m(4, 4);
        RngStream rng(0);
        CHECK_THROWS_AS(step_column(state, m, rng), InvariantViolation);
    }
    SUBCASE("corrupted state with too few free rows trips") {
        // Sums (2, 2, 2, 1) at t = 2: only row 3 may be chosen, b = 2.
        auto state = state_with(MagicSpec::square(4, 2), 2, {2, 2, 2, 1});
        BinaryMatrix m(4, 4);
        RngStream rng(0);
        CHECK_THROWS_AS(step_column(state, m, rng), InvariantViolation);
    }
    SUBCASE("instrumented mode rejects sums outside the running bounds") {
        auto state = state_with(MagicSpec::square(4, 2), 3, {2, 2, 2, 0});
        BinaryMatrix m(4, 4);
        RngStream rng(0);
        CHECK_THROWS_AS(step_column(state, m, rng, {.instrumented = true}), InvariantViolation);
    }
    SUBCASE("no column left") {
        auto state = state_with(MagicSpec::square(2, 1), 2, {1, 1});
        BinaryMatrix m(2, 2);
        RngStream rng(0);
        CHECK_THROWS_AS(step_column(state, m, rng), InvariantViolation);
    }
}

TEST_CASE("forced sets can be tight when no row is free") {
    // Columns 0 and 1 both pick rows {0, 1}: at t = 2, |a1| = k and a2 is empty.
    auto state = state_with(MagicSpec::square(4, 2), 2, {2, 2, 0, 0});
    const auto p = partition_rows(state);
    CHECK(p.a1 == std::vector<Index>{2, 3});
    CHECK(p.a2.empty());
    CHECK(p.a3 == std::vector<Index>{0, 1});
    BinaryMatrix m(4, 4);
    for (Index j : {0, 1}) {
        m.set(0, j);
        m.set(1, j);
    }
    RngStream rng(0);
    CHECK_NOTHROW(step_column(state, m, rng, {.instrumented = true}));
    CHECK_NOTHROW(step_column(state, m, rng, {.instrumented = true}));
    CHECK(validate(m, MagicSpec::square(4, 2)).is_valid);
}

TEST_CASE("generate") {
    SUBCASE("5x5 with k = 3") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            CHECK(validate(generate(MagicSpec::square(5, 3), seed), MagicSpec::square(5, 3)).is_valid);
        }
    }
    SUBCASE("forced extremes") {
        CHECK(generate(MagicSpec::square(3, 0), 4) == BinaryMatrix(3, 3));
        CHECK(generate(MagicSpec::square(3, 3), 4) == test::ones(3, 3));
    }
    SUBCASE("4x6 rectangle") {
        const MagicSpec spec(4, 6, 3, 2);
        const auto m = generate(spec, 17);
        CHECK(m.rows() == 4);
        CHECK(m.cols() == 6);
        CHECK(validate(m, spec).is_valid);
    }
    SUBCASE("infeasible spec") {
        try {
            (void)generate(MagicSpec(3, 5, 2, 1), 0);
            FAIL("expected FeasibilityError");
        } catch (const FeasibilityError& e) {
            CHECK(e.nearest_pairs() == std::vector<SumPair>{{0, 0}, {5, 3}});
        }
    }
    SUBCASE("pure in (spec, seed)") {
        const MagicSpec spec(30, 45, 12, 8);
        CHECK(generate(spec, 5) == generate(spec, 5));
        CHECK(generate(spec, 5) != generate(spec, 6));
    }
    SUBCASE("wide rows spanning several words") {
        const MagicSpec spec(130, 195, 66, 44);
        CHECK(validate(generate(spec, 8, {.instrumented = true}), spec).is_valid);
    }
}

TEST_CASE("step invariants hold on every column of a sweep") {
    // Independent re-check through the observer: running bounds before each
    // column, |E| = b, and partition sets covering every row exactly once.
    Index columns_checked = 0;
    for (Index m = 1; m <= 9; ++m) {
        for (Index n = 1; n <= 9; ++n) {
            for (const auto& [a, b] : feasible_pairs(m, n)) {
                const MagicSpec spec(m, n, a, b);
                GenerateOptions opts;
                opts.instrumented = true;
                opts.observer = [&](const GenState& st, const Partition& p, std::span<const Index> sel) {
                    for (Index s : st.s) {
                        REQUIRE(s >= a + st.t - n);
                        REQUIRE(s <= a);
                    }
                    REQUIRE(static_cast<Index>(sel.size()) == b);
                    REQUIRE(static_cast<Index>(p.a1.size() + p.a2.size() + p.a3.size()) == m);
                    ++columns_checked;
                };
                for (std::uint64_t seed = 0; seed < 5; ++seed) {
                    CHECK(validate(generate(spec, seed, opts), spec).is_valid);
                }
            }
        }
    }
    CHECK(columns_checked > 0);
}

TEST_CASE("generate matches the reference implementation corpus") {
    std::ifstream corpus(std::string(BMS_GOLDEN_DIR) + "/corpus.txt");
    REQUIRE(corpus);
    int cases = 0;
    Index m, n, a, b;
    std::uint64_t seed;
    std::string file;
    while (corpus >> m >> n >> a >> b >> seed >> file) {
        CAPTURE(file);
        const auto expected = test::read_file(std::string(BMS_GOLDEN_DIR) + "/" + file);
        const auto got = io::render(generate(MagicSpec(m, n, a, b), seed), io::Format::dense);
        CHECK(got == expected);
        ++cases;
    }
    CHECK(cases == 20);
}

TEST_CASE("generate_batch") {
    const auto spec = MagicSpec::square(8, 3);
    SUBCASE("independent of worker count") {
        const auto one = generate_batch(spec, {100, 77, 1});
        const auto four = generate_batch(spec, {100, 77, 4});
        const auto automatic = generate_batch(spec, {100, 77, 0});
        CHECK(one == four);
        CHECK(one == automatic);
        REQUIRE(one.size() == 100);
        for (std::size_t i = 0; i < one.size(); ++i) {
            CHECK(one[i] == generate(spec, derive_seed(77, i)));
        }
    }
    SUBCASE("empty batch") {
        CHECK(generate_batch(MagicSpec::square(4, 2), {0, 1, 4}).empty());
    }
    SUBCASE("infeasible spec") {
        CHECK_THROWS_AS(generate_batch(MagicSpec(3, 5, 2, 1), {3, 1, 2}), FeasibilityError);
    }
    SUBCASE("covers all permutation matrices of order 3") {
        const auto batch = generate_batch(MagicSpec::square(3, 1), {5000, 3, 2});
        const std::set<BinaryMatrix> distinct(batch.begin(), batch.end());
        const auto all = oracle::enumerate(MagicSpec::square(3, 1));
        CHECK(distinct == std::set<BinaryMatrix>(all.matrices.begin(), all.matrices.end()));
    }
}
