#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mlcomp/state.hpp"

namespace mlcomp {

// A transformation of A^n stored extensionally: table[j] is the lexicographic
// index of the image of the state with lexicographic index j.  Functions act
// on the right, so compose(f, g) applies f first.
class Transformation {
public:
    Transformation() = default;
    Transformation(int n, int q, std::vector<std::uint32_t> table);

    static Transformation identity(int n, int q);

    int n() const { return n_; }
    int q() const { return q_; }
    StateIndex domain_size() const { return table_.size(); }
    const std::vector<std::uint32_t>& table() const { return table_; }

    std::uint32_t apply_index(std::uint32_t j) const { return table_[j]; }
    State evaluate(const State& x) const;

    // The i-th coordinate function (1-based register), as a table over A^n.
    std::vector<Symbol> coordinate_table(int i) const;

    bool is_identity() const;
    bool is_permutation() const;
    Transformation inverse() const;

    bool operator==(const Transformation&) const = default;

private:
    int n_ = 0;
    int q_ = 2;
    std::vector<std::uint32_t> table_;
};

Transformation compose(const Transformation& f, const Transformation& g);
Transformation transposition(const State& u, const State& v);
Transformation transposition(StateIndex u, StateIndex v, int n, int q);
Transformation assignment(const State& u, const State& v);
Transformation assignment(StateIndex u, StateIndex v, int n, int q);

// f^g = g^{-1} f g; g must be a permutation.
Transformation conjugate(const Transformation& f, const Transformation& g);

StateIndex rank(const Transformation& f);
std::vector<std::vector<std::uint32_t>> kernel_partition(const Transformation& f);
std::vector<std::vector<std::uint32_t>> cycle_decomposition(const Transformation& f);

Transformation random_transformation(int n, int q, std::mt19937_64& rng);
Transformation random_permutation(int n, int q, std::mt19937_64& rng);

void check_compatible(const Transformation& f, const Transformation& g);

}  // namespace mlcomp
