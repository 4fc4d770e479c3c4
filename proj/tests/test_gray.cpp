#include <doctest.h>

#include <string>
#include <vector>

#include "mlcomp/gray.hpp"

using namespace mlcomp;

namespace {

// Display convention used throughout: register 1 first.
std::string word(const State& s) {
    std::string out;
    for (int i = 0; i < s.n; ++i) out += static_cast<char>('0' + s[i]);
    return out;
}

std::vector<std::string> words(const GrayCode& g) {
    std::vector<std::string> out;
    for (const auto& s : g.order) out.push_back(word(s));
    return out;
}

}  // namespace

TEST_CASE("canonical code, two binary registers") {
    GrayCode g = canonical_gray(2, 2);
    CHECK(words(g) == std::vector<std::string>{"00", "01", "11", "10"});
    CHECK(g.delta == std::vector<int>{1, 2, 1, 2});
    validate_gray(g);
}

TEST_CASE("canonical code, three binary registers") {
    GrayCode g = canonical_gray(3, 2);
    CHECK(words(g) == std::vector<std::string>{"000", "001", "011", "010",
                                               "110", "111", "101", "100"});
    CHECK(g.delta == std::vector<int>{1, 3, 2, 3, 1, 3, 2, 3});
    validate_gray(g);
}

TEST_CASE("canonical code for larger alphabets is cyclic") {
    for (int q : {3, 4, 5})
        for (int n : {1, 2, 3}) validate_gray(canonical_gray(n, q));
}

TEST_CASE("doubling code on four registers") {
    GrayCode g = doubling_gray(4);
    std::vector<std::string> want = {"0000", "0001", "0101", "0111", "1111", "1110",
                                     "1010", "1000", "1100", "1101", "1001", "1011",
                                     "0011", "0010", "0110", "0100"};
    CHECK(words(g) == want);
    CHECK(g.delta == std::vector<int>{2, 4, 2, 3, 1, 4, 2, 3, 2, 4, 2, 3, 1, 4, 2, 3});
    CHECK(g.runs.size() == 6);
    validate_gray(g);
}

TEST_CASE("run counts of the canonical binary codes") {
    for (int n = 2; n <= 16; ++n) {
        GrayCode g = canonical_gray(n, 2);
        CHECK(g.runs.size() == (1u << (n - 1)));
    }
}

TEST_CASE("doubling beats canonical run density at each doubling") {
    double prev = 2.0;
    for (int n : {2, 4, 8, 16}) {
        GrayCode g = doubling_gray(n);
        validate_gray(g);
        double density =
            static_cast<double>(g.runs.size()) / static_cast<double>(g.order.size());
        CHECK(density < prev);
        prev = density;
    }
}

TEST_CASE("product codes for lengths that are not powers of two") {
    for (int n : {3, 5, 6, 7, 9, 12}) {
        GrayCode g = product_gray(n);
        validate_gray(g);
        CHECK(g.order.size() == (1u << n));
    }
}

TEST_CASE("even-alphabet codes") {
    for (int q : {4, 6})
        for (int n : {1, 2, 3}) {
            GrayCode g = even_gray(n, q);
            validate_gray(g);
        }
}

TEST_CASE("pseudo codes cover every state with few repeats") {
    for (int Q : {3, 4, 5, 6, 8})
        for (int n : {1, 2}) {
            PseudoGrayCode p = pseudo_gray(n, Q);
            validate_pseudo(p);
            CHECK(p.redundancy == redundancy(p));
        }
}

TEST_CASE("greedy run partition on a handmade delta sequence") {
    // coordinate repeats force new runs exactly at the repeat points
    std::vector<int> delta = {1, 2, 1, 3, 3, 2, 1};
    auto runs = greedy_runs(delta);
    CHECK(runs == std::vector<size_t>{0, 2, 4});
}
