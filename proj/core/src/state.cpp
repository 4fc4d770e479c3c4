#include "mlcomp/state.hpp"

namespace mlcomp {

void check_state(const State& s) {
    if (s.q < 2)
        throw shape_error("alphabet size must be at least 2");
    if (s.n < 1 || static_cast<int>(s.digits.size()) != s.n)
        throw shape_error("state dimension mismatch");
    for (Symbol d : s.digits)
        if (d < 0 || d >= s.q)
            throw shape_error("digit out of alphabet range");
}

StateIndex lex_index(const State& s) {
    StateIndex idx = 0;
    StateIndex weight = 1;
    for (int i = 0; i < s.n; ++i) {
        idx += static_cast<StateIndex>(s.digits[static_cast<size_t>(i)]) * weight;
        weight *= static_cast<StateIndex>(s.q);
    }
    return idx;
}

State state_of_index(StateIndex j, int n, int q) {
    if (j >= pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(n)))
        throw range_error("lexicographic index out of range");
    State s(n, q);
    for (int i = 0; i < n; ++i) {
        s.digits[static_cast<size_t>(i)] = static_cast<Symbol>(j % static_cast<StateIndex>(q));
        j /= static_cast<StateIndex>(q);
    }
    return s;
}

State unit_state(int k, int n, int q, Symbol value) {
    if (k < 0 || k > n)
        throw range_error("register index out of range");
    State s(n, q);
    if (k > 0)
        s.digits[static_cast<size_t>(k - 1)] = value % q;
    return s;
}

}  // namespace mlcomp
