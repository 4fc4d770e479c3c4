#include "mlcomp/machines.hpp"

#include <algorithm>
#include <memory>
#include <numeric>

#include "mlcomp/compiler.hpp"
#include "mlcomp/gray.hpp"
#include "mlcomp/hamming.hpp"
#include "mlcomp/types.hpp"

namespace mlcomp {

namespace {

// Machines stay well below this many registers at the supported scales.
constexpr long long kRegisterBudget = 1 << 20;

StateIndex window_index(const std::vector<Symbol>& x, int offset0, int n, int q) {
    StateIndex idx = 0, w = 1;
    for (int i = 0; i < n; ++i) {
        idx += static_cast<StateIndex>(x[static_cast<size_t>(offset0 + i)]) * w;
        w *= static_cast<StateIndex>(q);
    }
    return idx;
}

Symbol digit_of(StateIndex idx, int i1, int q) {
    for (int t = 1; t < i1; ++t) idx /= static_cast<StateIndex>(q);
    return static_cast<Symbol>(idx % static_cast<StateIndex>(q));
}

std::vector<int> iota_regs(int lo, int hi) {  // inclusive 1-based range
    std::vector<int> v;
    for (int r = lo; r <= hi; ++r) v.push_back(r);
    return v;
}

void check_target(const UniversalMachine& mc, const Transformation& g) {
    if (g.n() != mc.n || g.q() != mc.q)
        throw shape_error("target does not act on the machine's A^n");
}

}  // namespace

std::vector<Symbol> gamma_table(StateIndex s, int q, int n) {
    StateIndex qn = pow_u64(q, static_cast<unsigned>(n));
    pow_u64(q, static_cast<unsigned>(qn));  // range check only
    if (s < 1) throw range_error("coordinate-function ordinals are 1-based");
    std::vector<Symbol> t(qn);
    StateIndex v = s - 1;
    for (StateIndex j = 0; j < qn; ++j) {
        t[j] = static_cast<Symbol>(v % static_cast<StateIndex>(q));
        v /= static_cast<StateIndex>(q);
    }
    if (v != 0) throw range_error("coordinate-function ordinal out of range");
    return t;
}

StateIndex gamma_index(const std::vector<Symbol>& table, int q) {
    StateIndex s = 0, w = 1;
    for (size_t j = 0; j < table.size(); ++j) {
        s += static_cast<StateIndex>(table[j]) * w;
        if (j + 1 < table.size()) w *= static_cast<StateIndex>(q);
    }
    return s + 1;
}

Transformation nth_transformation(StateIndex s, int n, int q) {
    StateIndex qn = pow_u64(q, static_cast<unsigned>(n));
    pow_u64(qn, static_cast<unsigned>(qn));  // range check only
    if (s < 1) throw range_error("transformation ordinals are 1-based");
    std::vector<std::uint32_t> table(qn);
    StateIndex v = s - 1;
    for (StateIndex j = 0; j < qn; ++j) {
        table[j] = static_cast<std::uint32_t>(v % qn);
        v /= qn;
    }
    if (v != 0) throw range_error("transformation ordinal out of range");
    return Transformation(n, q, std::move(table));
}

StateIndex transformation_ordinal(const Transformation& f) {
    StateIndex qn = f.domain_size();
    StateIndex s = 0, w = 1;
    for (StateIndex j = 0; j < qn; ++j) {
        s += static_cast<StateIndex>(f.table()[j]) * w;
        if (j + 1 < qn) w *= qn;
    }
    return s + 1;
}

// ---------------------------------------------------------------------------
// Elementary machine: one two-register switch per transformation of A^n.

UniversalMachine elementary_universal(int q, int n) {
    const StateIndex qn = pow_u64(q, static_cast<unsigned>(n));
    const StateIndex Qn = pow_u64(qn, static_cast<unsigned>(qn));  // q^(n q^n)
    const long long m = 2LL * n + 2LL * static_cast<long long>(Qn);
    if (m > kRegisterBudget) throw range_error("switch count exceeds the register budget");

    UniversalMachine mc;
    mc.kind = "elementary";
    mc.q = q;
    mc.n = n;
    mc.m = static_cast<int>(m);
    mc.params["Qn"] = static_cast<long long>(Qn);

    // Powers of q^n, for digit extraction from transformation ordinals.
    auto pw = std::make_shared<std::vector<StateIndex>>();
    for (StateIndex j = 0, w = 1; j < qn; ++j, w *= qn) pw->push_back(w);

    const int M = mc.m;
    std::vector<int> all_switches = iota_regs(2 * n + 1, M);
    for (int i = 1; i <= n; ++i) {
        std::vector<int> win = all_switches;
        win.push_back(i);
        for (int j = n + 1; j <= 2 * n; ++j) win.push_back(j);
        mc.rules.push_back({"output", std::move(win),
                            [i, n, q, qn, Qn, pw](const std::vector<Symbol>& x) -> Symbol {
                                int found = 0;
                                StateIndex s = 0;
                                for (StateIndex t = 1; t <= Qn; ++t) {
                                    if (x[2 * n + t - 1] != x[2 * n + Qn + t - 1]) {
                                        ++found;
                                        s = t;
                                        if (found > 1) break;
                                    }
                                }
                                if (found != 1) return x[static_cast<size_t>(i - 1)];
                                StateIndex idx = window_index(x, n, n, q);
                                StateIndex img = ((s - 1) / (*pw)[idx]) % qn;
                                return digit_of(img, i, q);
                            }});
    }
    for (int r = n + 1; r <= 2 * n; ++r)
        mc.rules.push_back({"copy", {r - n},
                            [r, n](const std::vector<Symbol>& x) { return x[static_cast<size_t>(r - n - 1)]; }});
    for (StateIndex j = 2 * n + 1; j <= 2 * n + Qn; ++j)
        mc.rules.push_back({"switch-off", {static_cast<int>(j + Qn)},
                            [j, Qn](const std::vector<Symbol>& x) { return x[j + Qn - 1]; }});
    for (StateIndex k = 2 * n + Qn + 1; k <= static_cast<StateIndex>(M); ++k)
        mc.rules.push_back({"switch-on", {static_cast<int>(k)},
                            [k, q](const std::vector<Symbol>& x) -> Symbol {
                                return (x[k - 1] + 1) % q;
                            }});

    mc.layout["outputs"] = iota_regs(1, n);
    mc.layout["copy"] = iota_regs(n + 1, 2 * n);
    mc.layout["switch-a"] = iota_regs(2 * n + 1, 2 * n + static_cast<int>(Qn));
    mc.layout["switch-b"] = iota_regs(2 * n + static_cast<int>(Qn) + 1, M);
    check_machine(mc);
    return mc;
}

Schedule emit_elementary(const UniversalMachine& mc,
                         const std::vector<Transformation>& targets) {
    if (targets.empty()) throw degenerate_input_error("no targets to simulate");
    const int n = mc.n;
    const long long Qn = mc.params.at("Qn");
    Schedule sch;
    sch.m = mc.m;
    auto u = [&](long long r) { sch.push(Step::update(static_cast<int>(r))); };

    for (int r = n + 1; r <= 2 * n; ++r) u(r);
    for (long long j = 2 * n + 1; j <= 2 * n + Qn; ++j) u(j);

    if (targets.size() == 1) {
        check_target(mc, targets[0]);
        u(2 * n + Qn + static_cast<long long>(transformation_ordinal(targets[0])));
        for (int i = 1; i <= n; ++i) u(i);
        sch.mark(targets[0]);
        return sch;
    }
    const Transformation* prev = nullptr;
    for (const Transformation& g : targets) {
        check_target(mc, g);
        long long s = static_cast<long long>(transformation_ordinal(g));
        u(2 * n + Qn + s);
        for (int i = 1; i <= n; ++i)
            if (!prev || prev->coordinate_table(i) != g.coordinate_table(i)) u(i);
        sch.mark(g);
        u(2 * n + s);  // switch back off
        prev = &g;
    }
    return sch;
}

// ---------------------------------------------------------------------------
// Compact machines (size n+2) and the shared block emitters.

namespace {

struct CompactTables {
    int rho = 1;
    // ipow[i-1][j]: value table of the (I^(i))^(2^j) coordinate function.
    std::vector<std::vector<std::vector<Symbol>>> ipow;
    std::vector<Symbol> t1, a2;
};

std::shared_ptr<const CompactTables> compact_tables(int q, int n) {
    GeneratingSet y = generating_set(q, n);
    auto t = std::make_shared<CompactTables>();
    t->rho = y.rho;
    t->ipow.resize(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j < y.rho; ++j)
            t->ipow[static_cast<size_t>(i - 1)].push_back(y.i_pow[static_cast<size_t>(i - 1)][static_cast<size_t>(j)].coord);
    t->t1 = y.t1.coord;
    t->a2 = y.a2.coord;
    return t;
}

// A generator word with consecutive powers of the same I^(i) merged.
struct AtomGroup {
    bool is_power = false;
    GenAtom::Kind kind = GenAtom::Kind::T1;
    int reg = 1;
    long long total = 0;
};

std::vector<AtomGroup> group_atoms(const std::vector<GenAtom>& atoms) {
    std::vector<AtomGroup> groups;
    for (const GenAtom& a : atoms) {
        if (a.kind == GenAtom::Kind::IPow) {
            if (!groups.empty() && groups.back().is_power && groups.back().reg == a.reg) {
                groups.back().total += a.exp;
            } else {
                groups.push_back({true, a.kind, a.reg, a.exp});
            }
        } else {
            groups.push_back({false, a.kind, a.reg, 0});
        }
    }
    return groups;
}

long long cycle_order_of(int reg, int q) {
    return reg == 1 ? std::lcm<long long>(q - 1, q) : q;
}

// Emits the per-generator blocks of the positional-switch machine, tracking
// the switch position in `s` (callers pass the current position and get the
// final one back).  inc/reset raise the switch by one / reset it to zero;
// `u` emits a single-register update.
template <class U, class Inc, class Reset>
void emit_blocks_positional(const std::vector<AtomGroup>& groups, int q, int rho,
                            int& s, U u, Inc inc, Reset reset) {
    const long long cap = (1LL << rho) - 1;
    for (const AtomGroup& g : groups) {
        if (!g.is_power) {
            while (s < rho) {
                inc();
                ++s;
            }
            u(g.kind == GenAtom::Kind::T1 ? 1 : 2);
            continue;
        }
        long long lam = g.total % cycle_order_of(g.reg, q);
        while (lam > 0) {
            long long c = std::min(lam, cap);
            lam -= c;
            if (s != 0) {
                reset();
                s = 0;
            }
            for (int pos = 0; pos < rho; ++pos) {
                if ((c >> pos) & 1) {
                    while (s < pos) {
                        inc();
                        ++s;
                    }
                    u(g.reg);
                }
            }
        }
    }
}

// Blocks for the equal/unequal switch variant.
template <class U>
void emit_blocks_simple(const std::vector<AtomGroup>& groups, int q, int n, U u) {
    for (const AtomGroup& g : groups) {
        if (!g.is_power) {
            u(n + 2);
            u(g.kind == GenAtom::Kind::T1 ? 1 : 2);
            u(n + 1);
            continue;
        }
        long long lam = g.total % cycle_order_of(g.reg, q);
        for (long long t = 0; t < lam; ++t) u(g.reg);
    }
}

int switch_position(const std::vector<Symbol>& x, int n, int q) {
    return ((x[static_cast<size_t>(n + 1)] - x[static_cast<size_t>(n)]) % q + q) % q;
}

}  // namespace

UniversalMachine compact_universal(int q, int n) {
    if (n < 2) throw shape_error("compact machine needs n >= 2");
    auto tabs = compact_tables(q, n);

    UniversalMachine mc;
    mc.kind = "compact";
    mc.q = q;
    mc.n = n;
    mc.m = n + 2;
    mc.params["rho"] = tabs->rho;

    std::vector<int> full = iota_regs(1, n + 2);
    for (int i = 1; i <= n; ++i)
        mc.rules.push_back({"output", full,
                            [i, n, q, tabs](const std::vector<Symbol>& x) -> Symbol {
                                int s = switch_position(x, n, q);
                                StateIndex idx = window_index(x, 0, n, q);
                                if (s < tabs->rho) return tabs->ipow[static_cast<size_t>(i - 1)][static_cast<size_t>(s)][idx];
                                if (s == tabs->rho) {
                                    if (i == 1) return tabs->t1[idx];
                                    if (i == 2) return tabs->a2[idx];
                                }
                                return x[static_cast<size_t>(i - 1)];
                            }});
    mc.rules.push_back({"switch-reset", {n + 2},
                        [n](const std::vector<Symbol>& x) { return x[static_cast<size_t>(n + 1)]; }});
    mc.rules.push_back({"switch-step", {n + 2},
                        [n, q](const std::vector<Symbol>& x) -> Symbol {
                            return (x[static_cast<size_t>(n + 1)] + 1) % q;
                        }});
    mc.layout["outputs"] = iota_regs(1, n);
    mc.layout["switch"] = {n + 1, n + 2};
    check_machine(mc);
    return mc;
}

Schedule emit_compact(const UniversalMachine& mc, const Transformation& g) {
    check_target(mc, g);
    const int n = mc.n, q = mc.q;
    GeneratingSet y = generating_set(q, n);
    SynthesisReport rep = transformation_program(y, g);

    Schedule sch;
    sch.m = mc.m;
    auto u = [&](int r) { sch.push(Step::update(r)); };
    u(n + 1);  // h^(0): park the switch at position 0
    int s = 0;
    emit_blocks_positional(group_atoms(rep.generators), q, y.rho, s, u,
                           [&] { u(n + 2); }, [&] { u(n + 1); });
    sch.mark(g);
    return sch;
}

UniversalMachine simple_compact_universal(int q, int n) {
    if (n < 2) throw shape_error("compact machine needs n >= 2");
    auto tabs = compact_tables(q, n);

    UniversalMachine mc;
    mc.kind = "simple_compact";
    mc.q = q;
    mc.n = n;
    mc.m = n + 2;
    mc.params["rho"] = 1;

    std::vector<int> full = iota_regs(1, n + 2);
    for (int i = 1; i <= n; ++i)
        mc.rules.push_back({"output", full,
                            [i, n, q, tabs](const std::vector<Symbol>& x) -> Symbol {
                                bool eq = x[static_cast<size_t>(n)] == x[static_cast<size_t>(n + 1)];
                                StateIndex idx = window_index(x, 0, n, q);
                                if (i == 1) return eq ? tabs->ipow[0][0][idx] : tabs->t1[idx];
                                if (i == 2) return eq ? tabs->ipow[1][0][idx] : tabs->a2[idx];
                                return tabs->ipow[static_cast<size_t>(i - 1)][0][idx];
                            }});
    mc.rules.push_back({"switch-reset", {n + 2},
                        [n](const std::vector<Symbol>& x) { return x[static_cast<size_t>(n + 1)]; }});
    mc.rules.push_back({"switch-step", {n + 1, n + 2},
                        [n, q](const std::vector<Symbol>& x) -> Symbol {
                            bool eq = x[static_cast<size_t>(n)] == x[static_cast<size_t>(n + 1)];
                            return eq ? (x[static_cast<size_t>(n + 1)] + 1) % q
                                      : x[static_cast<size_t>(n + 1)];
                        }});
    mc.layout["outputs"] = iota_regs(1, n);
    mc.layout["switch"] = {n + 1, n + 2};
    check_machine(mc);
    return mc;
}

Schedule emit_simple_compact(const UniversalMachine& mc, const Transformation& g) {
    check_target(mc, g);
    const int n = mc.n, q = mc.q;
    GeneratingSet y = generating_set(q, n);
    SynthesisReport rep = transformation_program(y, g);

    Schedule sch;
    sch.m = mc.m;
    auto u = [&](int r) { sch.push(Step::update(r)); };
    u(n + 1);  // equalize the switch pair
    emit_blocks_simple(group_atoms(rep.generators), q, n, u);
    sch.mark(g);
    return sch;
}

// ---------------------------------------------------------------------------
// Fast machine: coded switch, 4n + r steps per target.

UniversalMachine fast_universal(int q, int n) {
    const StateIndex qn = pow_u64(q, static_cast<unsigned>(n));
    const StateIndex Q = pow_u64(q, static_cast<unsigned>(qn));
    if (2LL * n + static_cast<long long>(Q) + 64 > kRegisterBudget)
        throw range_error("coordinate-function count exceeds the register budget");
    auto code = std::make_shared<LinearCode>(shortened_hamming(static_cast<int>(Q)));
    const int r = code->r;

    UniversalMachine mc;
    mc.kind = "fast";
    mc.q = q;
    mc.n = n;
    mc.m = 2 * n + static_cast<int>(Q) + r;
    mc.params["Q"] = static_cast<long long>(Q);
    mc.params["r"] = r;

    const int M = mc.m;
    const int info0 = 2 * n;           // 0-based start of info registers
    const int nhat = static_cast<int>(Q) + r;
    for (int i = 1; i <= n; ++i) {
        std::vector<int> win = iota_regs(2 * n + 1, M);
        win.push_back(i);
        for (int j = n + 1; j <= 2 * n; ++j) win.push_back(j);
        mc.rules.push_back({"output", std::move(win),
                            [i, n, q, Q, info0, nhat, code](const std::vector<Symbol>& x) -> Symbol {
                                std::vector<int> v(static_cast<size_t>(nhat));
                                for (int t = 0; t < nhat; ++t) v[static_cast<size_t>(t)] = x[static_cast<size_t>(info0 + t)] & 1;
                                int d = decode_error_position(*code, v);
                                if (d == 0 || d > static_cast<int>(Q)) return x[static_cast<size_t>(i - 1)];
                                StateIndex idx = window_index(x, n, n, q);
                                StateIndex img = static_cast<StateIndex>(d - 1);
                                for (StateIndex t = 0; t < idx; ++t) img /= static_cast<StateIndex>(q);
                                return static_cast<Symbol>(img % static_cast<StateIndex>(q));
                            }});
    }
    for (int j = n + 1; j <= 2 * n; ++j)
        mc.rules.push_back({"copy", {j - n},
                            [j, n](const std::vector<Symbol>& x) { return x[static_cast<size_t>(j - n - 1)]; }});
    for (int k = 2 * n + 1; k <= 2 * n + static_cast<int>(Q); ++k)
        mc.rules.push_back({"info-err", {k},
                            [k, q](const std::vector<Symbol>& x) { return err_map(x[static_cast<size_t>(k - 1)], q); }});
    for (int t = 1; t <= r; ++t) {
        std::vector<int> win = iota_regs(2 * n + 1, 2 * n + static_cast<int>(Q));
        mc.rules.push_back({"parity", std::move(win),
                            [t, info0, Q, code](const std::vector<Symbol>& x) -> Symbol {
                                int bit = 0;
                                for (int i = 0; i < static_cast<int>(Q); ++i)
                                    bit ^= (x[static_cast<size_t>(info0 + i)] & 1) &
                                           code->generator[static_cast<size_t>(i)][static_cast<size_t>(static_cast<int>(Q) + t - 1)];
                                return bit;
                            }});
    }
    mc.layout["outputs"] = iota_regs(1, n);
    mc.layout["copy"] = iota_regs(n + 1, 2 * n);
    mc.layout["info"] = iota_regs(2 * n + 1, 2 * n + static_cast<int>(Q));
    mc.layout["parity"] = iota_regs(2 * n + static_cast<int>(Q) + 1, M);
    check_machine(mc);
    return mc;
}

Schedule emit_fast(const UniversalMachine& mc, const Transformation& g) {
    check_target(mc, g);
    const int n = mc.n, q = mc.q;
    const long long Q = mc.params.at("Q");
    Schedule sch;
    sch.m = mc.m;
    auto u = [&](long long r) { sch.push(Step::update(static_cast<int>(r))); };
    for (int j = n + 1; j <= 2 * n; ++j) u(j);
    for (int t = 2 * n + static_cast<int>(Q) + 1; t <= mc.m; ++t) u(t);
    for (int i = 1; i <= n; ++i) {
        long long k = static_cast<long long>(gamma_index(g.coordinate_table(i), q));
        u(2 * n + k);
        u(i);
        u(2 * n + k);
    }
    sch.mark(g);
    return sch;
}

// ---------------------------------------------------------------------------
// Complete compact machine: restore mode over a compact core.

UniversalMachine complete_compact(int q, int n) {
    if (n < 2) throw shape_error("compact machine needs n >= 2");
    auto tabs = compact_tables(q, n);
    const bool simple = (q == 3 || q == 5);
    const int rho_eff = simple ? 1 : tabs->rho;

    UniversalMachine mc;
    mc.kind = "complete_compact";
    mc.q = q;
    mc.n = n;
    mc.params["rho_eff"] = rho_eff;

    if (q == 2) {
        mc.m = 2 * n + 3;
        std::vector<int> full = iota_regs(1, mc.m);
        for (int i = 1; i <= n; ++i)
            mc.rules.push_back({"output", full,
                                [i, n, q, tabs](const std::vector<Symbol>& x) -> Symbol {
                                    if (x[static_cast<size_t>(n + 1)] != x[static_cast<size_t>(n + 2)])
                                        return x[static_cast<size_t>(n + 2 + i)];  // restore from the copy
                                    int s = switch_position(x, n, q);
                                    StateIndex idx = window_index(x, 0, n, q);
                                    if (s == 0) return tabs->ipow[static_cast<size_t>(i - 1)][0][idx];
                                    if (i == 1) return tabs->t1[idx];
                                    if (i == 2) return tabs->a2[idx];
                                    return x[static_cast<size_t>(i - 1)];
                                }});
        mc.rules.push_back({"switch-reset", {n + 2},
                            [n](const std::vector<Symbol>& x) { return x[static_cast<size_t>(n + 1)]; }});
        mc.rules.push_back({"switch-step", {n + 2},
                            [n, q](const std::vector<Symbol>& x) -> Symbol {
                                return (x[static_cast<size_t>(n + 1)] + 1) % q;
                            }});
        mc.rules.push_back({"restore-toggle", {n + 2},
                            [n, q](const std::vector<Symbol>& x) -> Symbol {
                                return (x[static_cast<size_t>(n + 1)] + 1) % q;
                            }});
        for (int j = n + 4; j <= 2 * n + 3; ++j)
            mc.rules.push_back({"copy", {j - n - 3},
                                [j, n](const std::vector<Symbol>& x) { return x[static_cast<size_t>(j - n - 4)]; }});
        mc.layout["outputs"] = iota_regs(1, n);
        mc.layout["switch"] = {n + 1, n + 2, n + 3};
        mc.layout["copy"] = iota_regs(n + 4, 2 * n + 3);
    } else {
        mc.m = 2 * n + 2;
        const int restore = rho_eff + 1;
        std::vector<int> full = iota_regs(1, mc.m);
        for (int i = 1; i <= n; ++i)
            mc.rules.push_back({"output", full,
                                [i, n, q, restore, simple, tabs](const std::vector<Symbol>& x) -> Symbol {
                                    int s = switch_position(x, n, q);
                                    if (s == restore) return x[static_cast<size_t>(n + 1 + i)];
                                    StateIndex idx = window_index(x, 0, n, q);
                                    if (simple) {
                                        if (s == 0) return tabs->ipow[static_cast<size_t>(i - 1)][0][idx];
                                        if (s == 1 && i == 1) return tabs->t1[idx];
                                        if (s == 1 && i == 2) return tabs->a2[idx];
                                        if (i >= 3) return tabs->ipow[static_cast<size_t>(i - 1)][0][idx];
                                        return x[static_cast<size_t>(i - 1)];
                                    }
                                    if (s < tabs->rho) return tabs->ipow[static_cast<size_t>(i - 1)][static_cast<size_t>(s)][idx];
                                    if (s == tabs->rho) {
                                        if (i == 1) return tabs->t1[idx];
                                        if (i == 2) return tabs->a2[idx];
                                    }
                                    return x[static_cast<size_t>(i - 1)];
                                }});
        mc.rules.push_back({"switch-reset", {n + 2},
                            [n](const std::vector<Symbol>& x) { return x[static_cast<size_t>(n + 1)]; }});
        mc.rules.push_back({"switch-step", {n + 2},
                            [n, q](const std::vector<Symbol>& x) -> Symbol {
                                return (x[static_cast<size_t>(n + 1)] + 1) % q;
                            }});
        for (int j = n + 3; j <= 2 * n + 2; ++j)
            mc.rules.push_back({"copy", {j - n - 2},
                                [j, n](const std::vector<Symbol>& x) { return x[static_cast<size_t>(j - n - 3)]; }});
        mc.layout["outputs"] = iota_regs(1, n);
        mc.layout["switch"] = {n + 1, n + 2};
        mc.layout["copy"] = iota_regs(n + 3, 2 * n + 2);
    }
    check_machine(mc);
    return mc;
}

Schedule emit_complete(const UniversalMachine& mc,
                       const std::vector<Transformation>& targets) {
    if (targets.empty()) throw degenerate_input_error("no targets to simulate");
    const int n = mc.n, q = mc.q;
    const bool q2 = (q == 2);
    const bool simple = (q == 3 || q == 5);
    GeneratingSet y = generating_set(q, n);
    const int rho_eff = simple ? 1 : y.rho;

    Schedule sch;
    sch.m = mc.m;
    auto u = [&](int r) { sch.push(Step::update(r)); };
    // Raising the inner switch must keep the q=2 restore pair equal, so it
    // goes through the toggle/step pair there.
    auto inc = [&] {
        if (q2) u(n + 3);
        u(n + 2);
    };

    // Prefix: force the restore pair into the maintained (equal) state, park
    // the inner switch, and copy the original input.
    if (q2) {
        u(n + 3);
        u(n + 2);
    }
    u(n + 1);
    const int copy_lo = q2 ? n + 4 : n + 3;
    for (int j = copy_lo; j <= mc.m; ++j) u(j);

    int s = 0;
    bool first = true;
    for (const Transformation& g : targets) {
        check_target(mc, g);
        if (!first) {
            // Block B: restore the outputs from the copy, then re-park.
            if (q2) {
                u(n + 3);
                for (int i = 1; i <= n; ++i) u(i);
                u(n + 2);
                u(n + 1);
            } else {
                for (int t = 0; t <= rho_eff; ++t) u(n + 2);
                for (int i = 1; i <= n; ++i) u(i);
                u(n + 1);
            }
            s = 0;
        }
        SynthesisReport rep = transformation_program(y, g);
        auto groups = group_atoms(rep.generators);
        if (simple) {
            emit_blocks_simple(groups, q, n, u);
        } else {
            emit_blocks_positional(groups, q, y.rho, s, u, inc, [&] { u(n + 1); });
            if (s != 0) {
                u(n + 1);
                s = 0;
            }
        }
        sch.mark(g);
        first = false;
    }
    return sch;
}

// ---------------------------------------------------------------------------
// Complete minimum-time machine: pseudo-Gray enumeration of Tran(A^n).

namespace {

struct MinTimeData {
    int q = 2, n = 0, sigma = 1, m = 0;
    StateIndex qn = 0, Q = 0;
    size_t L = 0;
    int r = 0;
    std::vector<Transformation> mapped;       // per enumeration position
    std::vector<int> D;                       // change coordinate per position
    std::vector<size_t> run_start;            // greedy run offsets over D
    std::vector<std::vector<long long>> lam;  // [run][coord-1] -> position or -1
    GrayCode ctr;                             // (sigma, q) counter code
    std::vector<int> ind;                     // counter lex index -> code position
};

std::shared_ptr<const MinTimeData> min_time_data(int q, int n) {
    auto d = std::make_shared<MinTimeData>();
    d->q = q;
    d->n = n;
    d->qn = pow_u64(q, static_cast<unsigned>(n));
    d->Q = pow_u64(q, static_cast<unsigned>(d->qn));
    if (static_cast<long long>(d->Q) > kRegisterBudget)
        throw range_error("coordinate-function count exceeds the register budget");

    PseudoGrayCode P = pseudo_gray(n, static_cast<int>(d->Q));
    d->L = P.order.size();

    // Offset each coordinate so that position 0 maps to the identity: value 0
    // in coordinate i names the i-th projection.
    std::vector<StateIndex> base(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        std::vector<Symbol> proj(d->qn);
        for (StateIndex j = 0; j < d->qn; ++j) proj[j] = digit_of(j, i, q);
        base[static_cast<size_t>(i - 1)] = gamma_index(proj, q);
    }
    d->mapped.reserve(d->L);
    for (const State& v : P.order) {
        std::vector<std::vector<Symbol>> coords;
        for (int i = 1; i <= n; ++i) {
            StateIndex s = ((static_cast<StateIndex>(v.digits[static_cast<size_t>(i - 1)]) +
                             base[static_cast<size_t>(i - 1)] - 1) %
                            d->Q) +
                           1;
            coords.push_back(gamma_table(s, q, n));
        }
        std::vector<std::uint32_t> table(d->qn);
        for (StateIndex j = 0; j < d->qn; ++j) {
            StateIndex img = 0, w = 1;
            for (int i = 0; i < n; ++i) {
                img += static_cast<StateIndex>(coords[static_cast<size_t>(i)][j]) * w;
                w *= static_cast<StateIndex>(q);
            }
            table[j] = static_cast<std::uint32_t>(img);
        }
        d->mapped.emplace_back(n, q, std::move(table));
    }

    // Change coordinates, with the wrap-around difference at position 0 when
    // the code happens to close up (it does for even Q); otherwise a no-op
    // on register 1 fills the slot.
    d->D.assign(d->L, 1);
    for (size_t t = 1; t < d->L; ++t) d->D[t] = P.delta[t - 1];
    {
        const State& a = P.order.back();
        const State& b = P.order.front();
        int diff = 0, cnt = 0;
        for (int i = 0; i < n; ++i)
            if (a.digits[static_cast<size_t>(i)] != b.digits[static_cast<size_t>(i)]) {
                diff = i + 1;
                ++cnt;
            }
        if (cnt == 1) d->D[0] = diff;
    }
    d->run_start = greedy_runs(d->D);
    d->r = static_cast<int>(d->run_start.size());

    int s0 = 0;
    for (long long t = 1; t < d->r; t *= q) ++s0;
    d->sigma = s0 + 1;
    d->m = 2 * n + d->sigma + 2;

    d->lam.assign(static_cast<size_t>(d->r), std::vector<long long>(static_cast<size_t>(n), -1));
    for (int s = 0; s < d->r; ++s) {
        size_t lo = d->run_start[static_cast<size_t>(s)];
        size_t hi = (s + 1 < d->r) ? d->run_start[static_cast<size_t>(s + 1)] : d->L;
        for (size_t t = lo; t < hi; ++t) d->lam[static_cast<size_t>(s)][static_cast<size_t>(d->D[t] - 1)] = static_cast<long long>(t);
    }

    d->ctr = canonical_gray(d->sigma, q);
    d->ind.assign(d->ctr.order.size(), 0);
    for (size_t p = 0; p < d->ctr.order.size(); ++p) d->ind[lex_index(d->ctr.order[p])] = static_cast<int>(p);
    return d;
}

}  // namespace

UniversalMachine complete_min_time(int q, int n) {
    auto d = min_time_data(q, n);

    UniversalMachine mc;
    mc.kind = "complete_min_time";
    mc.q = q;
    mc.n = n;
    mc.m = d->m;
    mc.params["Q"] = static_cast<long long>(d->Q);
    mc.params["L"] = static_cast<long long>(d->L);
    mc.params["r"] = d->r;
    mc.params["sigma"] = d->sigma;

    const int sigma = d->sigma, m = d->m;
    std::vector<int> full = iota_regs(1, m);
    for (int i = 1; i <= n; ++i)
        mc.rules.push_back({"output", full,
                            [i, n, q, sigma, d](const std::vector<Symbol>& x) -> Symbol {
                                int run = d->ind[window_index(x, 2 * n, sigma, q)];
                                if (run >= d->r) return x[static_cast<size_t>(i - 1)];
                                long long pos = d->lam[static_cast<size_t>(run)][static_cast<size_t>(i - 1)];
                                if (pos < 0) return x[static_cast<size_t>(n + i - 1)];  // identity: copy through
                                StateIndex idx = window_index(x, n, n, q);
                                return digit_of(d->mapped[static_cast<size_t>(pos)].apply_index(static_cast<std::uint32_t>(idx)), i, q);
                            }});
    for (int j = n + 1; j <= 2 * n; ++j)
        mc.rules.push_back({"copy", {j - n},
                            [j, n](const std::vector<Symbol>& x) { return x[static_cast<size_t>(j - n - 1)]; }});
    for (int c = 1; c <= sigma; ++c) {
        std::vector<int> win = iota_regs(2 * n + 1, 2 * n + sigma);
        win.push_back(m - 1);
        win.push_back(m);
        mc.rules.push_back({"counter", std::move(win),
                            [c, n, q, sigma, d](const std::vector<Symbol>& x) -> Symbol {
                                if (x[static_cast<size_t>(d->m - 2)] != x[static_cast<size_t>(d->m - 1)])
                                    return d->ctr.order[0].digits[static_cast<size_t>(c - 1)];
                                size_t p = static_cast<size_t>(d->ind[window_index(x, 2 * n, sigma, q)]);
                                size_t np = (p + 1) % d->ctr.order.size();
                                return d->ctr.order[np].digits[static_cast<size_t>(c - 1)];
                            }});
    }
    mc.rules.push_back({"reset-off", {m},
                        [m](const std::vector<Symbol>& x) { return x[static_cast<size_t>(m - 1)]; }});
    // reads its partner so a single update forces the pair unequal no matter
    // how the run started
    mc.rules.push_back({"reset-on", {m - 1},
                        [m, q](const std::vector<Symbol>& x) -> Symbol {
                            return (x[static_cast<size_t>(m - 2)] + 1) % q;
                        }});
    mc.layout["outputs"] = iota_regs(1, n);
    mc.layout["copy"] = iota_regs(n + 1, 2 * n);
    mc.layout["counter"] = iota_regs(2 * n + 1, 2 * n + sigma);
    mc.layout["reset"] = {m - 1, m};
    check_machine(mc);
    return mc;
}

Schedule emit_enumeration(const UniversalMachine& mc, int repetitions) {
    if (repetitions < 1) throw degenerate_input_error("need at least one pass");
    auto d = min_time_data(mc.q, mc.n);
    const int n = mc.n, m = d->m;

    Schedule sch;
    sch.m = m;
    auto u = [&](int r) { sch.push(Step::update(r)); };
    for (int j = n + 1; j <= 2 * n; ++j) u(j);
    for (int pass = 0; pass < repetitions; ++pass) {
        u(m);                                          // enter reset mode
        for (int c = 1; c <= d->sigma; ++c) u(2 * n + c);  // counter to its initial state
        u(m - 1);                                      // leave reset mode
        for (int s = 0; s < d->r; ++s) {
            if (s > 0) u(2 * n + d->ctr.delta[static_cast<size_t>(s) % d->ctr.delta.size()]);
            size_t lo = d->run_start[static_cast<size_t>(s)];
            size_t hi = (s + 1 < d->r) ? d->run_start[static_cast<size_t>(s + 1)] : d->L;
            for (size_t t = lo; t < hi; ++t) {
                u(d->D[t]);
                sch.mark(d->mapped[t]);
            }
        }
    }
    return sch;
}

// ---------------------------------------------------------------------------
// Complete maximum-time machine: coded catalog selector plus Gray pacing.

UniversalMachine complete_max_time(int q, int n,
                                   const std::vector<std::vector<Transformation>>& catalog) {
    if (catalog.empty()) throw degenerate_input_error("empty catalog");
    const StateIndex qn = pow_u64(q, static_cast<unsigned>(n));
    const StateIndex Q = pow_u64(q, static_cast<unsigned>(qn));
    const int K = static_cast<int>(catalog.size());
    for (const auto& seq : catalog) {
        if (seq.size() != Q) throw shape_error("catalog sequences must have length Q");
        for (const Transformation& g : seq)
            if (g.n() != n || g.q() != q) throw shape_error("catalog entry acts on the wrong A^n");
    }
    auto code = std::make_shared<LinearCode>(shortened_hamming(K));
    const int r = code->r;
    const long long m = 2LL * n + K + r + static_cast<long long>(qn) + 2;
    if (m > kRegisterBudget) throw range_error("catalog exceeds the register budget");

    auto flat = std::make_shared<std::vector<Transformation>>();
    for (const auto& seq : catalog)
        for (const Transformation& g : seq) flat->push_back(g);

    auto ctr = std::make_shared<GrayCode>(canonical_gray(static_cast<int>(qn), q));
    auto ind = std::make_shared<std::vector<int>>(ctr->order.size(), 0);
    for (size_t p = 0; p < ctr->order.size(); ++p)
        (*ind)[lex_index(ctr->order[p])] = static_cast<int>(p);

    UniversalMachine mc;
    mc.kind = "complete_max_time";
    mc.q = q;
    mc.n = n;
    mc.m = static_cast<int>(m);
    mc.params["Q"] = static_cast<long long>(Q);
    mc.params["K"] = K;
    mc.params["r"] = r;
    mc.catalog = *flat;

    const int M = mc.m;
    const int info0 = 2 * n;
    const int ctr0 = 2 * n + K + r;  // 0-based start of counter registers
    const int nhat = K + r;
    const int qni = static_cast<int>(qn);
    for (int i = 1; i <= n; ++i) {
        std::vector<int> win = iota_regs(1, M);
        mc.rules.push_back({"output", std::move(win),
                            [i, n, q, K, info0, ctr0, nhat, qni, code, flat, ctr, ind, Q](
                                const std::vector<Symbol>& x) -> Symbol {
                                std::vector<int> v(static_cast<size_t>(nhat));
                                for (int t = 0; t < nhat; ++t) v[static_cast<size_t>(t)] = x[static_cast<size_t>(info0 + t)] & 1;
                                int tau = decode_error_position(*code, v);
                                if (tau == 0 || tau > K) return x[static_cast<size_t>(i - 1)];
                                int l = (*ind)[window_index(x, ctr0, qni, q)];
                                const Transformation& g =
                                    (*flat)[static_cast<size_t>(tau - 1) * Q + static_cast<size_t>(l)];
                                StateIndex idx = window_index(x, n, n, q);
                                return digit_of(g.apply_index(static_cast<std::uint32_t>(idx)), i, q);
                            }});
    }
    for (int j = n + 1; j <= 2 * n; ++j)
        mc.rules.push_back({"copy", {j - n},
                            [j, n](const std::vector<Symbol>& x) { return x[static_cast<size_t>(j - n - 1)]; }});
    for (int k = 2 * n + 1; k <= 2 * n + K; ++k)
        mc.rules.push_back({"info-err", {k},
                            [k, q](const std::vector<Symbol>& x) { return err_map(x[static_cast<size_t>(k - 1)], q); }});
    for (int t = 1; t <= r; ++t)
        mc.rules.push_back({"parity", iota_regs(2 * n + 1, 2 * n + K),
                            [t, info0, K, code](const std::vector<Symbol>& x) -> Symbol {
                                int bit = 0;
                                for (int i = 0; i < K; ++i)
                                    bit ^= (x[static_cast<size_t>(info0 + i)] & 1) &
                                           code->generator[static_cast<size_t>(i)][static_cast<size_t>(K + t - 1)];
                                return bit;
                            }});
    for (int c = 1; c <= qni; ++c) {
        std::vector<int> win = iota_regs(ctr0 + 1, ctr0 + qni);
        win.push_back(M - 1);
        win.push_back(M);
        mc.rules.push_back({"counter", std::move(win),
                            [c, q, ctr0, qni, M, ctr, ind](const std::vector<Symbol>& x) -> Symbol {
                                if (x[static_cast<size_t>(M - 2)] != x[static_cast<size_t>(M - 1)]) return 0;
                                size_t p = static_cast<size_t>((*ind)[window_index(x, ctr0, qni, q)]);
                                size_t np = (p + 1) % ctr->order.size();
                                return ctr->order[np].digits[static_cast<size_t>(c - 1)];
                            }});
    }
    mc.rules.push_back({"reset-off", {M},
                        [M](const std::vector<Symbol>& x) { return x[static_cast<size_t>(M - 1)]; }});
    mc.rules.push_back({"reset-on", {M},
                        [M, q](const std::vector<Symbol>& x) -> Symbol {
                            return (x[static_cast<size_t>(M - 1)] + 1) % q;
                        }});
    mc.layout["outputs"] = iota_regs(1, n);
    mc.layout["copy"] = iota_regs(n + 1, 2 * n);
    mc.layout["info"] = iota_regs(2 * n + 1, 2 * n + K);
    mc.layout["parity"] = iota_regs(2 * n + K + 1, 2 * n + K + r);
    mc.layout["counter"] = iota_regs(ctr0 + 1, ctr0 + qni);
    mc.layout["reset"] = {M - 1, M};
    check_machine(mc);
    return mc;
}

Schedule emit_max(const UniversalMachine& mc, const std::vector<int>& indices) {
    const int n = mc.n, q = mc.q, m = mc.m;
    const long long Q = mc.params.at("Q");
    const long long K = mc.params.at("K");
    const long long r = mc.params.at("r");
    const int qni = static_cast<int>(pow_u64(q, static_cast<unsigned>(n)));
    GrayCode ctr = canonical_gray(qni, q);
    const int ctr0 = static_cast<int>(2 * n + K + r);

    Schedule sch;
    sch.m = m;
    auto u = [&](long long reg) { sch.push(Step::update(static_cast<int>(reg))); };
    for (int j = n + 1; j <= 2 * n; ++j) u(j);
    for (long long t = 1; t <= r; ++t) u(2 * n + K + t);
    u(m - 1);
    u(m);
    for (int c = 1; c <= qni; ++c) u(ctr0 + c);
    u(m - 1);
    for (int i_mu : indices) {
        if (i_mu < 1 || i_mu > K) throw range_error("catalog index out of range");
        u(2 * n + i_mu);
        for (long long step = 0; step < Q; ++step) {
            for (int i = 1; i <= n; ++i) u(i);
            sch.mark(mc.catalog[static_cast<size_t>(i_mu - 1) * static_cast<size_t>(Q) +
                                static_cast<size_t>(step)]);
            u(ctr0 + ctr.delta[static_cast<size_t>((step + 1) % Q)]);
        }
        u(2 * n + i_mu);
    }
    return sch;
}

std::vector<std::vector<int>> all_diff_ordering(int Q, int n) {
    if (Q < 4) throw range_error("ordering needs Q >= 4");
    if (n < 1) throw shape_error("ordering needs n >= 1");
    StateIndex rows = pow_u64(Q, static_cast<unsigned>(n - 1));
    std::vector<std::vector<int>> out;
    out.reserve(rows * static_cast<StateIndex>(Q));
    for (StateIndex t = 0; t < rows; ++t) {
        std::vector<int> start(static_cast<size_t>(n), 0);
        StateIndex v = t;
        for (int i = 0; i < n - 1; ++i) {  // first coordinate increments first
            start[static_cast<size_t>(i)] = static_cast<int>(v % static_cast<StateIndex>(Q));
            v /= static_cast<StateIndex>(Q);
        }
        for (int j = 0; j < Q; ++j) {
            std::vector<int> e(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) e[static_cast<size_t>(i)] = (start[static_cast<size_t>(i)] + j) % Q;
            out.push_back(std::move(e));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Quasi-parallel machine: a conveyor of input copies behind the outputs.

UniversalMachine quasi_parallel(int q, int n,
                                const std::vector<Transformation>& catalog) {
    if (catalog.empty()) throw degenerate_input_error("empty catalog");
    const int K = static_cast<int>(catalog.size());
    for (const Transformation& g : catalog)
        if (g.n() != n || g.q() != q) throw shape_error("catalog entry acts on the wrong A^n");
    int sigma = 0;
    for (long long t = 1; t < K + 2; t *= q) ++sigma;
    const long long m = static_cast<long long>(K + 2) * n + sigma + 2;
    if (m > kRegisterBudget) throw range_error("catalog exceeds the register budget");

    auto cat = std::make_shared<std::vector<Transformation>>(catalog);

    UniversalMachine mc;
    mc.kind = "quasi_parallel";
    mc.q = q;
    mc.n = n;
    mc.m = static_cast<int>(m);
    mc.params["K"] = K;
    mc.params["sigma"] = sigma;
    mc.catalog = catalog;

    const int M = mc.m;
    const int belt = (K + 2) * n;  // registers 1..belt
    const int ctr0 = belt;         // 0-based start of counter registers
    for (int i = 1; i <= n; ++i) {
        std::vector<int> win = iota_regs(1, belt);
        for (int c = 1; c <= sigma; ++c) win.push_back(ctr0 + c);
        mc.rules.push_back({"output", std::move(win),
                            [i, n, q, K, sigma, ctr0, cat](const std::vector<Symbol>& x) -> Symbol {
                                long long C = static_cast<long long>(window_index(x, ctr0, sigma, q));
                                if (C >= K + 2) return x[static_cast<size_t>(i - 1)];
                                size_t block0 = static_cast<size_t>(C) * static_cast<size_t>(n);
                                if (C < 2) return x[block0 + static_cast<size_t>(i - 1)];
                                const Transformation& g = (*cat)[static_cast<size_t>(C - 2)];
                                StateIndex idx = window_index(x, static_cast<int>(block0), n, q);
                                return digit_of(g.apply_index(static_cast<std::uint32_t>(idx)), i, q);
                            }});
    }
    for (int j = n + 1; j <= belt; ++j)
        mc.rules.push_back({"belt", {j - n},
                            [j, n](const std::vector<Symbol>& x) { return x[static_cast<size_t>(j - n - 1)]; }});
    for (int c = 1; c <= sigma; ++c) {
        std::vector<int> win = iota_regs(ctr0 + 1, ctr0 + sigma);
        win.push_back(M - 1);
        win.push_back(M);
        mc.rules.push_back({"counter", std::move(win),
                            [c, q, K, sigma, ctr0, M](const std::vector<Symbol>& x) -> Symbol {
                                long long C = static_cast<long long>(window_index(x, ctr0, sigma, q));
                                long long next = (x[static_cast<size_t>(M - 2)] == x[static_cast<size_t>(M - 1)])
                                                     ? (C + 1) % (K + 2)
                                                     : 2;
                                return digit_of(static_cast<StateIndex>(next), c, q);
                            }});
    }
    mc.rules.push_back({"reset-off", {M},
                        [M](const std::vector<Symbol>& x) { return x[static_cast<size_t>(M - 1)]; }});
    mc.rules.push_back({"reset-on", {M},
                        [M, q](const std::vector<Symbol>& x) -> Symbol {
                            return (x[static_cast<size_t>(M - 1)] + 1) % q;
                        }});
    mc.layout["belt"] = iota_regs(1, belt);
    mc.layout["counter"] = iota_regs(ctr0 + 1, ctr0 + sigma);
    mc.layout["reset"] = {M - 1, M};
    check_machine(mc);
    return mc;
}

Schedule emit_qp(const UniversalMachine& mc, int repetitions) {
    if (repetitions < 1) throw degenerate_input_error("need at least one pass");
    const int K = static_cast<int>(mc.params.at("K"));
    if (repetitions > 1 && !mc.catalog.back().is_identity())
        throw degenerate_input_error(
            "repeated passes need an identity as the last catalog entry to refill the belt");

    Schedule sch;
    sch.m = mc.m;
    sch.push(Step::parallel());
    sch.push(Step::last());  // the only update of the last register
    sch.push(Step::parallel());
    for (int t = 1; t <= K; ++t) {
        sch.push(Step::parallel());
        sch.mark(mc.catalog[static_cast<size_t>(t - 1)]);
    }
    long long extra = static_cast<long long>(repetitions - 1) * (K + 2);
    for (long long t = 0; t < extra; ++t) {
        long long pre = t % (K + 2);  // counter value before this step
        sch.push(Step::parallel());
        if (pre >= 2) sch.mark(mc.catalog[static_cast<size_t>(pre - 2)]);
    }
    return sch;
}

UniversalMachine build_machine(const std::string& kind, int q, int n,
                               const std::vector<Transformation>& catalog) {
    if (kind == "elementary") return elementary_universal(q, n);
    if (kind == "compact") return compact_universal(q, n);
    if (kind == "simple_compact") return simple_compact_universal(q, n);
    if (kind == "fast") return fast_universal(q, n);
    if (kind == "complete_compact") return complete_compact(q, n);
    if (kind == "complete_min_time") return complete_min_time(q, n);
    if (kind == "complete_max_time") {
        StateIndex Q = pow_u64(q, static_cast<unsigned>(pow_u64(q, static_cast<unsigned>(n))));
        if (Q == 0 || catalog.size() % Q != 0)
            throw shape_error("flattened catalog must hold whole length-Q sequences");
        std::vector<std::vector<Transformation>> grouped;
        for (size_t i = 0; i < catalog.size(); i += Q)
            grouped.emplace_back(catalog.begin() + static_cast<long>(i),
                                 catalog.begin() + static_cast<long>(i + Q));
        return complete_max_time(q, n, grouped);
    }
    if (kind == "quasi_parallel") return quasi_parallel(q, n, catalog);
    throw error("unknown machine kind '" + kind + "'");
}

}  // namespace mlcomp
