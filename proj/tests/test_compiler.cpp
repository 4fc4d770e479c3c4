#include <doctest.h>

#include <numeric>
#include <random>

#include "mlcomp/compiler.hpp"
#include "mlcomp/types.hpp"

using namespace mlcomp;

TEST_CASE("generating set shapes") {
    GeneratingSet y = generating_set(2, 2);
    CHECK(y.rho == 1);
    CHECK(y.instructions().size() == 4);  // T, A, I^(1), I^(2)
    CHECK(y.t1.as_transformation() == transposition(0, 1, 2, 2));
    CHECK(y.a2.as_transformation() == assignment(0, 2, 2, 2));

    GeneratingSet y3 = generating_set(5, 2);
    CHECK(y3.rho == 3);
    CHECK(y3.i_pow[0].size() == 3);
}

TEST_CASE("cyclic instruction orders") {
    for (int q : {2, 3, 4, 5}) {
        GeneratingSet y = generating_set(q, 2);
        Transformation i1 = y.i_pow[0][0].as_transformation();
        Transformation i2 = y.i_pow[1][0].as_transformation();
        long long ord1 = std::lcm<long long>(q - 1, q);
        Transformation acc = i1;
        for (long long t = 1; t < ord1; ++t) {
            CHECK_FALSE(acc.is_identity());
            acc = compose(acc, i1);
        }
        CHECK(acc.is_identity());
        acc = i2;
        for (int t = 1; t < q; ++t) acc = compose(acc, i2);
        CHECK(acc.is_identity());
    }
}

TEST_CASE("power programs compute I^lambda") {
    for (int q : {2, 3, 5}) {
        GeneratingSet y = generating_set(q, 2);
        for (int i = 1; i <= 2; ++i) {
            Transformation base = y.i_pow[static_cast<size_t>(i - 1)][0].as_transformation();
            Transformation acc = Transformation::identity(2, q);
            for (int lam = 1; lam < q; ++lam) {
                acc = compose(acc, base);
                CHECK(power_program(y, i, lam).as_transformation(2, q) == acc);
            }
        }
    }
}

TEST_CASE("transpositions with the origin") {
    for (int q : {2, 3}) {
        GeneratingSet y = generating_set(q, 3);
        StateIndex qn = pow_u64(q, 3);
        for (StateIndex k = 1; k < qn; ++k) {
            auto rep = transposition_program(y, state_of_index(k, 3, q));
            CHECK(rep.program.as_transformation(3, q) ==
                  transposition(0, k, 3, q));
        }
    }
}

TEST_CASE("permutation synthesis") {
    std::mt19937_64 rng(21);
    for (int q : {2, 3}) {
        GeneratingSet y = generating_set(q, 2);
        for (int t = 0; t < 25; ++t) {
            Transformation pi = random_permutation(2, q, rng);
            CHECK(permutation_program(y, pi).program.as_transformation(2, q) == pi);
        }
    }
}

TEST_CASE("every transformation of A^2 over GF(2) compiles") {
    GeneratingSet y = generating_set(2, 2);
    for (StateIndex s = 0; s < 256; ++s) {
        std::vector<std::uint32_t> table(4);
        StateIndex v = s;
        for (int j = 0; j < 4; ++j) {
            table[static_cast<size_t>(j)] = static_cast<std::uint32_t>(v % 4);
            v /= 4;
        }
        Transformation g(2, 2, table);
        auto rep = transformation_program(y, g);
        CHECK(rep.program.as_transformation(2, 2) == g);
    }
}

TEST_CASE("random targets at q=3 compile") {
    GeneratingSet y = generating_set(3, 2);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        Transformation g = random_transformation(2, 3, rng);
        CHECK(transformation_program(y, g).program.as_transformation(2, 3) == g);
    }
}

TEST_CASE("total weight identity") {
    // sum over all states of the number of non-zero coordinates
    for (int q = 2; q <= 5; ++q)
        for (int n = 1; n <= 4; ++n) {
            StateIndex qn = pow_u64(q, static_cast<unsigned>(n));
            long long total = 0;
            for (StateIndex j = 0; j < qn; ++j) total += weight(state_of_index(j, n, q));
            long long want = static_cast<long long>(q - 1) * n *
                             static_cast<long long>(pow_u64(q, static_cast<unsigned>(n - 1)));
            CHECK(total == want);
        }
}

TEST_CASE("the three-instruction swap and its minimality") {
    for (int q : {2, 3, 5}) {
        Program p = swap_program(q);
        CHECK(p.length() == 3);
        Transformation got = p.as_transformation(2, q);
        for (StateIndex a = 0; a < static_cast<StateIndex>(q); ++a)
            for (StateIndex b = 0; b < static_cast<StateIndex>(q); ++b)
                CHECK(got.apply_index(static_cast<std::uint32_t>(a + b * q)) == b + a * q);
    }

    // BFS memoryless complexity over all 32 instructions at q=2
    Program p2 = swap_program(2);
    Transformation target = p2.as_transformation(2, 2);
    auto all = all_instructions(2, 2);
    ComplexityResult res = exact_complexity(target, all, 1 << 20);
    REQUIRE(res.length.has_value());
    CHECK(*res.length == 3);
}
