#include <doctest.h>

#include <vector>

#include "mlcomp/hamming.hpp"

using namespace mlcomp;

namespace {

std::vector<int> bits_of(unsigned v, int k) {
    std::vector<int> u(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) u[static_cast<size_t>(i)] = static_cast<int>((v >> i) & 1u);
    return u;
}

}  // namespace

TEST_CASE("code dimensions") {
    CHECK(shortened_hamming(1).n_hat == 3);
    CHECK(shortened_hamming(2).n_hat == 5);
    CHECK(shortened_hamming(4).n_hat == 7);
    CHECK(shortened_hamming(16).n_hat == 21);
    CHECK(shortened_hamming(16).r == 5);
}

TEST_CASE("systematic encoding") {
    for (int k : {1, 2, 4, 8}) {
        LinearCode code = shortened_hamming(k);
        for (unsigned v = 0; v < (1u << k); ++v) {
            std::vector<int> u = bits_of(v, k);
            std::vector<int> c = encode(code, u);
            REQUIRE(c.size() == static_cast<size_t>(code.n_hat));
            for (int i = 0; i < k; ++i) CHECK(c[static_cast<size_t>(i)] == u[static_cast<size_t>(i)]);
            CHECK(decode_error_position(code, c) == 0);
        }
    }
}

TEST_CASE("single-error correction, exhaustive for small dimensions") {
    for (int k : {1, 2, 4, 8}) {
        LinearCode code = shortened_hamming(k);
        for (unsigned v = 0; v < (1u << k); ++v) {
            std::vector<int> c = encode(code, bits_of(v, k));
            for (int j = 1; j <= code.n_hat; ++j) {
                std::vector<int> w = c;
                w[static_cast<size_t>(j - 1)] ^= 1;
                CHECK(decode_error_position(code, w) == j);
            }
        }
    }
}

TEST_CASE("error map flips parity and only parity survives doubling") {
    for (int q = 2; q <= 16; ++q) {
        for (Symbol a = 0; a < q; ++a) {
            Symbol b = err_map(a, q);
            CHECK(b != a);
            CHECK((b & 1) == 1 - (a & 1));
            Symbol c = err_map(b, q);
            CHECK((c & 1) == (a & 1));
        }
    }
}

TEST_CASE("componentwise parity") {
    CHECK(odd_map({0, 1, 2, 3, 7}) == std::vector<int>{0, 1, 0, 1, 1});
}
