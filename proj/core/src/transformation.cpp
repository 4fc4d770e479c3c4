#include "mlcomp/transformation.hpp"

#include <algorithm>
#include <numeric>

namespace mlcomp {

Transformation::Transformation(int n, int q, std::vector<std::uint32_t> table)
    : n_(n), q_(q), table_(std::move(table)) {
    StateIndex size = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(n));
    if (q < 2 || n < 1)
        throw shape_error("transformation needs q >= 2 and n >= 1");
    if (table_.size() != size)
        throw shape_error("transformation table must have q^n entries");
    for (std::uint32_t img : table_)
        if (img >= size)
            throw shape_error("transformation image out of range");
}

Transformation Transformation::identity(int n, int q) {
    StateIndex size = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(n));
    std::vector<std::uint32_t> t(size);
    std::iota(t.begin(), t.end(), 0u);
    return Transformation(n, q, std::move(t));
}

State Transformation::evaluate(const State& x) const {
    if (x.n != n_ || x.q != q_)
        throw shape_error("state shape does not match transformation");
    return state_of_index(table_[lex_index(x)], n_, q_);
}

std::vector<Symbol> Transformation::coordinate_table(int i) const {
    if (i < 1 || i > n_)
        throw range_error("coordinate index out of range");
    StateIndex weight = pow_u64(static_cast<StateIndex>(q_), static_cast<unsigned>(i - 1));
    std::vector<Symbol> out(table_.size());
    for (size_t j = 0; j < table_.size(); ++j)
        out[j] = static_cast<Symbol>((table_[j] / weight) % static_cast<StateIndex>(q_));
    return out;
}

bool Transformation::is_identity() const {
    for (size_t j = 0; j < table_.size(); ++j)
        if (table_[j] != j)
            return false;
    return true;
}

bool Transformation::is_permutation() const {
    std::vector<bool> seen(table_.size(), false);
    for (std::uint32_t img : table_) {
        if (seen[img])
            return false;
        seen[img] = true;
    }
    return true;
}

Transformation Transformation::inverse() const {
    std::vector<std::uint32_t> inv(table_.size());
    std::vector<bool> seen(table_.size(), false);
    for (std::uint32_t j = 0; j < table_.size(); ++j) {
        if (seen[table_[j]])
            throw not_invertible_error("transformation is singular");
        seen[table_[j]] = true;
        inv[table_[j]] = j;
    }
    return Transformation(n_, q_, std::move(inv));
}

void check_compatible(const Transformation& f, const Transformation& g) {
    if (f.n() != g.n() || f.q() != g.q())
        throw shape_error("transformations have different (n, q)");
}

Transformation compose(const Transformation& f, const Transformation& g) {
    check_compatible(f, g);
    std::vector<std::uint32_t> t(f.table().size());
    for (size_t j = 0; j < t.size(); ++j)
        t[j] = g.apply_index(f.apply_index(static_cast<std::uint32_t>(j)));
    return Transformation(f.n(), f.q(), std::move(t));
}

Transformation transposition(StateIndex u, StateIndex v, int n, int q) {
    if (u == v)
        throw degenerate_input_error("transposition of a state with itself");
    Transformation t = Transformation::identity(n, q);
    std::vector<std::uint32_t> table = t.table();
    std::swap(table[u], table[v]);
    return Transformation(n, q, std::move(table));
}

Transformation transposition(const State& u, const State& v) {
    if (u.n != v.n || u.q != v.q)
        throw shape_error("states have different shape");
    return transposition(lex_index(u), lex_index(v), u.n, u.q);
}

Transformation assignment(StateIndex u, StateIndex v, int n, int q) {
    Transformation t = Transformation::identity(n, q);
    std::vector<std::uint32_t> table = t.table();
    table[u] = static_cast<std::uint32_t>(v);
    return Transformation(n, q, std::move(table));
}

Transformation assignment(const State& u, const State& v) {
    if (u.n != v.n || u.q != v.q)
        throw shape_error("states have different shape");
    return assignment(lex_index(u), lex_index(v), u.n, u.q);
}

Transformation conjugate(const Transformation& f, const Transformation& g) {
    check_compatible(f, g);
    return compose(compose(g.inverse(), f), g);
}

StateIndex rank(const Transformation& f) {
    std::vector<bool> seen(f.table().size(), false);
    StateIndex r = 0;
    for (std::uint32_t img : f.table())
        if (!seen[img]) {
            seen[img] = true;
            ++r;
        }
    return r;
}

std::vector<std::vector<std::uint32_t>> kernel_partition(const Transformation& f) {
    std::vector<std::vector<std::uint32_t>> classes;
    std::vector<int> class_of(f.table().size(), -1);
    for (std::uint32_t j = 0; j < f.table().size(); ++j) {
        std::uint32_t img = f.apply_index(j);
        if (class_of[img] < 0) {
            class_of[img] = static_cast<int>(classes.size());
            classes.emplace_back();
        }
        classes[static_cast<size_t>(class_of[img])].push_back(j);
    }
    return classes;
}

std::vector<std::vector<std::uint32_t>> cycle_decomposition(const Transformation& f) {
    if (!f.is_permutation())
        throw not_invertible_error("cycle decomposition needs a permutation");
    std::vector<std::vector<std::uint32_t>> cycles;
    std::vector<bool> done(f.table().size(), false);
    for (std::uint32_t start = 0; start < f.table().size(); ++start) {
        if (done[start] || f.apply_index(start) == start) {
            done[start] = true;
            continue;
        }
        std::vector<std::uint32_t> cycle;
        for (std::uint32_t j = start; !done[j]; j = f.apply_index(j)) {
            cycle.push_back(j);
            done[j] = true;
        }
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

Transformation random_transformation(int n, int q, std::mt19937_64& rng) {
    StateIndex size = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(n));
    std::uniform_int_distribution<std::uint32_t> dist(0, static_cast<std::uint32_t>(size - 1));
    std::vector<std::uint32_t> t(size);
    for (auto& img : t)
        img = dist(rng);
    return Transformation(n, q, std::move(t));
}

Transformation random_permutation(int n, int q, std::mt19937_64& rng) {
    StateIndex size = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(n));
    std::vector<std::uint32_t> t(size);
    std::iota(t.begin(), t.end(), 0u);
    std::shuffle(t.begin(), t.end(), rng);
    return Transformation(n, q, std::move(t));
}

}  // namespace mlcomp
