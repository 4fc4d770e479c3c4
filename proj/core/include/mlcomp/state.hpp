#pragma once

#include <vector>

#include "mlcomp/types.hpp"

namespace mlcomp {

// A state of A^n with A = Z_q.  Lexicographic indexing is little-endian:
// index = sum_i digits[i] * q^i, so register 1 is the least significant.
struct State {
    int n = 0;
    int q = 2;
    std::vector<Symbol> digits;

    State() = default;
    State(int n_, int q_) : n(n_), q(q_), digits(static_cast<size_t>(n_), 0) {}
    State(std::vector<Symbol> d, int q_)
        : n(static_cast<int>(d.size())), q(q_), digits(std::move(d)) {}

    Symbol operator[](int reg) const { return digits[static_cast<size_t>(reg)]; }
    Symbol& operator[](int reg) { return digits[static_cast<size_t>(reg)]; }

    bool operator==(const State&) const = default;
};

StateIndex lex_index(const State& s);
State state_of_index(StateIndex j, int n, int q);

// e^k: 1 in register k (1-based), zero elsewhere; k = 0 gives the zero state.
State unit_state(int k, int n, int q, Symbol value = 1);

void check_state(const State& s);

}  // namespace mlcomp
