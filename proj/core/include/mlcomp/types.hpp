#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mlcomp {

using Symbol = int;          // an element of A = {0,...,q-1}
using StateIndex = std::uint64_t;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct shape_error : error {
    using error::error;
};
struct range_error : error {
    using error::error;
};
struct degenerate_input_error : error {
    using error::error;
};
struct not_invertible_error : error {
    using error::error;
};
struct budget_error : error {
    using error::error;
};
struct parse_error : error {
    parse_error(const std::string& msg, int line)
        : error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

// q^n, with overflow check; all in-scope state spaces fit in 64 bits.
inline StateIndex pow_u64(StateIndex base, unsigned exp) {
    StateIndex r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (r > UINT64_MAX / base)
            throw range_error("state space does not fit in 64 bits");
        r *= base;
    }
    return r;
}

}  // namespace mlcomp
