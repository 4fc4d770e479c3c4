#pragma once

#include <vector>

#include "mlcomp/types.hpp"

namespace mlcomp {

// Shortened binary Hamming code in systematic form: positions 1..k carry
// information, positions k+1..k+r carry parity.  Minimum distance 3, so any
// single error is locatable by syndrome.
struct LinearCode {
    int k = 0;
    int r = 0;
    int n_hat = 0;  // k + r
    std::vector<std::vector<int>> generator;  // k rows of n_hat bits
    std::vector<int> column_syndrome;         // per position, 1-based in [1, 2^r)
};

LinearCode shortened_hamming(int k);

std::vector<int> encode(const LinearCode& code, const std::vector<int>& u);

// 0 if v is a codeword (or the syndrome matches no remaining column),
// otherwise the 1-based position of the unique flipped bit.
int decode_error_position(const LinearCode& code, const std::vector<int>& v);

// Componentwise parity of a symbol string.
std::vector<int> odd_map(const std::vector<Symbol>& x);

// a+1 below the top symbol, a-1 at the top; always flips the parity of a.
Symbol err_map(Symbol a, int q);

}  // namespace mlcomp
