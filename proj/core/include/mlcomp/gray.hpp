#pragma once

#include <vector>

#include "mlcomp/state.hpp"

namespace mlcomp {

// A cyclic Gray code over A^n: order is a permutation of all q^n states,
// delta[i] is the unique coordinate (1-based) in which order[i-1 mod L] and
// order[i] differ, and runs holds the start offsets of the greedy run
// partition of delta.
struct GrayCode {
    int n = 0;
    int q = 2;
    std::vector<State> order;
    std::vector<int> delta;
    std::vector<size_t> runs;
};

// A pseudo-Gray code: every state appears at least once, consecutive states
// differ in one coordinate (not cyclically).  delta[i] is the coordinate
// changed between order[i] and order[i+1], so it has L-1 entries.
struct PseudoGrayCode {
    int n = 0;
    int q = 2;
    std::vector<State> order;
    std::vector<int> delta;
    std::vector<size_t> runs;
    size_t redundancy = 0;
};

// Greedy maximal-prefix run partition: a new run starts whenever the next
// element already occurs in the current run.  Returns run start offsets.
std::vector<size_t> greedy_runs(const std::vector<int>& delta);

// The modular q-ary Gray code, cyclic for every q; coincides with the
// standard reflected code when q = 2.
GrayCode canonical_gray(int n, int q);

// Low-run binary code built by repeatedly doubling the word length; n must
// be a power of two.
GrayCode doubling_gray(int n);

// Binary code for arbitrary n: doubling code on the largest power-of-two
// block, boustrophedon over a shorter code on the leading digits.
GrayCode product_gray(int n);

// Code for even q, splitting each digit as 2*d + b with d < q/2 and b < 2:
// binary product-code rows, (n, q/2) reflected path within each row.
GrayCode even_gray(int n, int q);

// Pseudo-Gray code over [Q]^n: the even construction when Q is even;
// otherwise the (n, Q-1) code followed by the missing states, bridged by
// single-coordinate steps.
PseudoGrayCode pseudo_gray(int n, int Q);

size_t redundancy(const PseudoGrayCode& p);

// Validity oracles; throw on any violation.
void validate_gray(const GrayCode& g);
void validate_pseudo(const PseudoGrayCode& p);

}  // namespace mlcomp
