#include "mlcomp/gray.hpp"

#include <algorithm>
#include <set>

namespace mlcomp {

namespace {

int diff_coordinate(const State& a, const State& b) {
    int where = 0;
    for (int i = 0; i < a.n; ++i) {
        if (a.digits[static_cast<size_t>(i)] != b.digits[static_cast<size_t>(i)]) {
            if (where != 0)
                return 0;  // distance > 1
            where = i + 1;
        }
    }
    return where;
}

// Fills delta and runs from order (cyclically) and checks the Gray property.
GrayCode finish_gray(int n, int q, std::vector<State> order) {
    GrayCode g;
    g.n = n;
    g.q = q;
    g.order = std::move(order);
    size_t len = g.order.size();
    g.delta.resize(len);
    for (size_t i = 0; i < len; ++i) {
        int c = diff_coordinate(g.order[(i + len - 1) % len], g.order[i]);
        if (c == 0)
            throw error("consecutive code states do not differ in exactly one coordinate");
        g.delta[i] = c;
    }
    g.runs = greedy_runs(g.delta);
    validate_gray(g);
    return g;
}

// One doubling step: a width-2h code from a width-h code, covering index
// pairs row by row.  Row t starts at offset s_t in the first component; the
// second component lags half a step behind.
std::vector<State> double_order(const GrayCode& g) {
    size_t h = g.order.size();  // 2^width
    std::vector<State> next;
    next.reserve(h * h);
    for (size_t t = 0; t < h / 2; ++t) {
        size_t start = t == 0 ? 0 : h - 2 * t;
        for (size_t j = 0; j < 2 * h; ++j) {
            size_t u = (start + j / 2) % h;
            size_t v = ((j + 1) / 2) % h;
            State s(2 * g.n, 2);
            for (int i = 0; i < g.n; ++i) {
                s.digits[static_cast<size_t>(i)] = g.order[u].digits[static_cast<size_t>(i)];
                s.digits[static_cast<size_t>(g.n + i)] = g.order[v].digits[static_cast<size_t>(i)];
            }
            next.push_back(std::move(s));
        }
    }
    return next;
}

// Reflected q-ary path (non-cyclic), last coordinate fastest.
std::vector<State> reflected_path(int n, int q) {
    std::vector<State> seq{State(0, q)};
    for (int level = 0; level < n; ++level) {
        std::vector<State> next;
        next.reserve(seq.size() * static_cast<size_t>(q));
        bool forward = true;
        for (const State& prefix : seq) {
            for (int d = 0; d < q; ++d) {
                int digit = forward ? d : q - 1 - d;
                State s = prefix;
                s.n += 1;
                s.digits.push_back(digit);
                next.push_back(std::move(s));
            }
            forward = !forward;
        }
        seq = std::move(next);
    }
    return seq;
}

}  // namespace

std::vector<size_t> greedy_runs(const std::vector<int>& delta) {
    std::vector<size_t> starts;
    std::set<int> seen;
    for (size_t i = 0; i < delta.size(); ++i) {
        if (seen.count(delta[i])) {
            starts.push_back(i);
            seen.clear();
        } else if (i == 0) {
            starts.push_back(0);
        }
        seen.insert(delta[i]);
    }
    return starts;
}

GrayCode canonical_gray(int n, int q) {
    if (n < 1)
        throw shape_error("code length must be positive");
    if (q < 2)
        throw shape_error("alphabet must have at least two symbols");
    StateIndex size = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(n));
    std::vector<State> order;
    order.reserve(size);
    for (StateIndex idx = 0; idx < size; ++idx) {
        // base-q digits of the rank, difference-coded; the fastest counter
        // digit lands in register n
        std::vector<int> b(static_cast<size_t>(n) + 1, 0);
        StateIndex rest = idx;
        for (int j = 0; j < n; ++j) {
            b[static_cast<size_t>(j)] = static_cast<int>(rest % static_cast<StateIndex>(q));
            rest /= static_cast<StateIndex>(q);
        }
        State s(n, q);
        for (int j = 0; j < n; ++j)
            s.digits[static_cast<size_t>(n - 1 - j)] =
                ((b[static_cast<size_t>(j)] - b[static_cast<size_t>(j) + 1]) % q + q) % q;
        order.push_back(std::move(s));
    }
    return finish_gray(n, q, std::move(order));
}

GrayCode doubling_gray(int n) {
    if (n < 2 || (n & (n - 1)) != 0)
        throw shape_error("doubling code needs a power-of-two length");
    GrayCode g = canonical_gray(2, 2);
    int width = 2;
    while (width < n) {
        g = finish_gray(2 * width, 2, double_order(g));
        width *= 2;
    }
    return g;
}

GrayCode product_gray(int n) {
    if (n < 1)
        throw shape_error("code length must be positive");
    int m = 1;
    while (2 * m <= n)
        m *= 2;
    if (m == n)
        return n == 1 ? canonical_gray(1, 2) : doubling_gray(n);

    GrayCode outer = product_gray(n - m);
    GrayCode inner = doubling_gray(m);
    std::vector<State> order;
    order.reserve(outer.order.size() * inner.order.size());
    bool forward = true;
    for (const State& row : outer.order) {
        size_t len = inner.order.size();
        for (size_t j = 0; j < len; ++j) {
            const State& cell = inner.order[forward ? j : len - 1 - j];
            State s(n, 2);
            for (int i = 0; i < n - m; ++i)
                s.digits[static_cast<size_t>(i)] = row.digits[static_cast<size_t>(i)];
            for (int i = 0; i < m; ++i)
                s.digits[static_cast<size_t>(n - m + i)] = cell.digits[static_cast<size_t>(i)];
            order.push_back(std::move(s));
        }
        forward = !forward;
    }
    return finish_gray(n, 2, std::move(order));
}

GrayCode even_gray(int n, int q) {
    if (q < 2 || q % 2 != 0)
        throw shape_error("construction requires an even alphabet");
    if (n < 1)
        throw shape_error("code length must be positive");
    int p = q / 2;
    GrayCode outer = product_gray(n);
    std::vector<State> inner =
        p == 1 ? std::vector<State>{State(n, 1)} : reflected_path(n, p);

    std::vector<State> order;
    order.reserve(outer.order.size() * inner.size());
    bool forward = true;
    for (const State& bits : outer.order) {
        size_t len = inner.size();
        for (size_t j = 0; j < len; ++j) {
            const State& half = inner[forward ? j : len - 1 - j];
            State s(n, q);
            for (int i = 0; i < n; ++i)
                s.digits[static_cast<size_t>(i)] =
                    2 * half.digits[static_cast<size_t>(i)] +
                    bits.digits[static_cast<size_t>(i)];
            order.push_back(std::move(s));
        }
        forward = !forward;
    }
    return finish_gray(n, q, std::move(order));
}

namespace {

PseudoGrayCode finish_pseudo(int n, int q, std::vector<State> order) {
    PseudoGrayCode p;
    p.n = n;
    p.q = q;
    p.order = std::move(order);
    p.delta.reserve(p.order.size() - 1);
    for (size_t i = 0; i + 1 < p.order.size(); ++i) {
        int c = diff_coordinate(p.order[i], p.order[i + 1]);
        if (c == 0)
            throw error("consecutive code states do not differ in exactly one coordinate");
        p.delta.push_back(c);
    }
    p.runs = greedy_runs(p.delta);
    p.redundancy = redundancy(p);
    validate_pseudo(p);
    return p;
}

}  // namespace

PseudoGrayCode pseudo_gray(int n, int Q) {
    if (Q < 2)
        throw shape_error("alphabet must have at least two symbols");
    if (Q % 2 == 0) {
        GrayCode g = even_gray(n, Q);
        return finish_pseudo(n, Q, std::move(g.order));
    }

    GrayCode base = even_gray(n, Q - 1);
    std::vector<State> order = std::move(base.order);
    for (State& s : order) s.q = Q;  // the base code lives over the smaller alphabet
    StateIndex size = pow_u64(static_cast<StateIndex>(Q), static_cast<unsigned>(n));
    for (StateIndex idx = 0; idx < size; ++idx) {
        State s = state_of_index(idx, n, Q);
        if (std::none_of(s.digits.begin(), s.digits.end(),
                         [Q](Symbol d) { return d == Q - 1; }))
            continue;
        // bridge from wherever we are with one coordinate change at a time
        State cur = order.back();
        for (int i = 0; i < n; ++i) {
            if (cur.digits[static_cast<size_t>(i)] == s.digits[static_cast<size_t>(i)])
                continue;
            cur.digits[static_cast<size_t>(i)] = s.digits[static_cast<size_t>(i)];
            order.push_back(cur);
        }
    }
    return finish_pseudo(n, Q, std::move(order));
}

size_t redundancy(const PseudoGrayCode& p) {
    StateIndex size =
        pow_u64(static_cast<StateIndex>(p.q), static_cast<unsigned>(p.n));
    return p.runs.size() + (p.order.size() - size);
}

void validate_gray(const GrayCode& g) {
    StateIndex size = pow_u64(static_cast<StateIndex>(g.q), static_cast<unsigned>(g.n));
    if (g.order.size() != size)
        throw shape_error("code does not enumerate the full state space");
    std::vector<bool> seen(size, false);
    for (const State& s : g.order) {
        StateIndex idx = lex_index(s);
        if (seen[idx])
            throw error("code visits a state twice");
        seen[idx] = true;
    }
    if (g.delta.size() != g.order.size())
        throw shape_error("delta length mismatch");
    for (size_t i = 0; i < g.order.size(); ++i) {
        const State& a = g.order[(i + g.order.size() - 1) % g.order.size()];
        const State& b = g.order[i];
        if (diff_coordinate(a, b) != g.delta[i])
            throw error("delta inconsistent with state order");
    }
}

void validate_pseudo(const PseudoGrayCode& p) {
    StateIndex size = pow_u64(static_cast<StateIndex>(p.q), static_cast<unsigned>(p.n));
    std::vector<bool> seen(size, false);
    for (const State& s : p.order)
        seen[lex_index(s)] = true;
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw error("pseudo code misses a state");
    if (p.delta.size() + 1 != p.order.size())
        throw shape_error("delta length mismatch");
    for (size_t i = 0; i + 1 < p.order.size(); ++i)
        if (diff_coordinate(p.order[i], p.order[i + 1]) != p.delta[i])
            throw error("delta inconsistent with state order");
}

}  // namespace mlcomp
