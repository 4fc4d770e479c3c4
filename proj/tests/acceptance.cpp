// End-to-end acceptance checks.  Each numbered criterion prints exactly one
// PASS/FAIL line; the exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <thread>
#include <vector>

#include "mlcomp/compiler.hpp"
#include "mlcomp/gray.hpp"
#include "mlcomp/hamming.hpp"
#include "mlcomp/machines.hpp"
#include "mlcomp/simulate.hpp"
#include "mlcomp/verify.hpp"

using namespace mlcomp;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const char* what, bool ok, double seconds) {
    std::printf("criterion %2d: %s  %-38s (%.2fs)\n", id, ok ? "PASS" : "FAIL", what, seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <class F>
void criterion(int id, const char* what, double limit_s, F body) {
    auto t0 = Clock::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::printf("  exception: %s\n", e.what());
        ok = false;
    }
    double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0 && dt > limit_s) ok = false;
    report(id, what, ok, dt);
}

Transformation constant_map(StateIndex k, int n, int q) {
    StateIndex qn = pow_u64(q, static_cast<unsigned>(n));
    std::vector<std::uint32_t> table(qn, static_cast<std::uint32_t>(k));
    return Transformation(n, q, std::move(table));
}

// 1. The three-instruction swap, correct for several alphabets and provably
// shortest over the full instruction set at q = 2.
bool check_swap() {
    for (int q : {2, 3, 5}) {
        Program p = swap_program(q);
        if (p.length() != 3) return false;
        Transformation got = p.as_transformation(2, q);
        for (StateIndex a = 0; a < static_cast<StateIndex>(q); ++a)
            for (StateIndex b = 0; b < static_cast<StateIndex>(q); ++b)
                if (got.apply_index(static_cast<std::uint32_t>(a + b * q)) !=
                    b + a * static_cast<StateIndex>(q))
                    return false;
    }
    Transformation target = swap_program(2).as_transformation(2, 2);
    ComplexityResult res = exact_complexity(target, all_instructions(2, 2), 1 << 20);
    return res.length && *res.length == 3;
}

// 2. No instruction tuple of A^2 generates all 232 singular transformations.
bool check_theorem1() {
    int singular = 0;
    for (StateIndex s = 1; s <= 256; ++s)
        if (!nth_transformation(s, 2, 2).is_permutation()) ++singular;
    if (singular != 232) return false;
    VerificationReport rep = theorem1_check(2, 2);
    return rep.pass() && rep.checked == 256;
}

// 3. The synthesis pipeline compiles every transformation of A^2 over GF(2),
// 500 random ternary targets, and respects the exact total-weight identity.
bool check_compiler() {
    GeneratingSet y2 = generating_set(2, 2);
    for (StateIndex s = 1; s <= 256; ++s) {
        Transformation g = nth_transformation(s, 2, 2);
        if (transformation_program(y2, g).program.as_transformation(2, 2) != g) return false;
    }
    GeneratingSet y3 = generating_set(3, 2);
    std::mt19937_64 rng(101);
    for (int t = 0; t < 500; ++t) {
        Transformation g = random_transformation(2, 3, rng);
        if (transformation_program(y3, g).program.as_transformation(2, 3) != g) return false;
    }
    for (int q = 2; q <= 5; ++q)
        for (int n = 1; n <= 4; ++n) {
            StateIndex qn = pow_u64(q, static_cast<unsigned>(n));
            long long total = 0;
            for (StateIndex j = 0; j < qn; ++j) total += weight(state_of_index(j, n, q));
            if (total != static_cast<long long>(q - 1) * n *
                             static_cast<long long>(pow_u64(q, static_cast<unsigned>(n - 1))))
                return false;
        }
    return true;
}

// Mirrors the compact emitter's switch accounting to bound each generator
// block independently.
bool compact_blocks_bounded(const std::vector<GenAtom>& atoms, int q, int rho) {
    struct Group {
        bool is_power;
        GenAtom::Kind kind;
        int reg;
        long long total;
    };
    std::vector<Group> groups;
    for (const GenAtom& a : atoms) {
        if (a.kind == GenAtom::Kind::IPow && !groups.empty() && groups.back().is_power &&
            groups.back().reg == a.reg) {
            groups.back().total += a.exp;
            continue;
        }
        groups.push_back({a.kind == GenAtom::Kind::IPow, a.kind, a.reg,
                          a.kind == GenAtom::Kind::IPow ? a.exp : 0});
    }
    const long long cap = (1LL << rho) - 1;
    int s = 0;
    for (const Group& g : groups) {
        size_t block = 0;
        if (!g.is_power) {
            block = static_cast<size_t>(rho - s) + 1;
            s = rho;
        } else {
            long long order = g.reg == 1 ? std::lcm<long long>(q - 1, q) : q;
            long long lam = g.total % order;
            while (lam > 0) {
                long long c = std::min(lam, cap);
                lam -= c;
                size_t chunk = 0;
                if (s != 0) {
                    ++chunk;
                    s = 0;
                }
                for (int pos = 0; pos < rho; ++pos)
                    if ((c >> pos) & 1) {
                        chunk += static_cast<size_t>(pos - s) + 1;
                        s = pos;
                    }
                if (chunk > 2 * static_cast<size_t>(rho)) return false;
                block += chunk;
            }
        }
        if (block > 2 * static_cast<size_t>(rho)) return false;
    }
    return true;
}

// 4. The four-register machine runs every binary target, checked over all 16
// initial states, and never spends more than 2*rho steps on one generator.
bool check_compact() {
    UniversalMachine mc = compact_universal(2, 2);
    GeneratingSet y = generating_set(2, 2);
    VerifyOptions opt;
    for (StateIndex s = 1; s <= 256; ++s) {
        Transformation g = nth_transformation(s, 2, 2);
        Schedule sched = emit_compact(mc, g);
        VerificationReport rep = verify_simulation(mc, sched, g, opt);
        if (!rep.pass() || rep.checked != 16) return false;
        if (!compact_blocks_bounded(transformation_program(y, g).generators, 2, y.rho))
            return false;
    }
    return true;
}

// 5. The constant-time machine: 13 steps for every target; exhaustive over
// all 2^25 initial states for three targets, sampled for all 256.
bool check_fast() {
    UniversalMachine mc = fast_universal(2, 2);
    std::mt19937_64 rng(7);
    VerifyOptions big;
    big.budget = 1ull << 26;
    big.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    for (const Transformation& g :
         {Transformation::identity(2, 2), constant_map(3, 2, 2), random_permutation(2, 2, rng)}) {
        Schedule sched = emit_fast(mc, g);
        if (sched.length() != 13) return false;
        VerificationReport rep = verify_simulation(mc, sched, g, big);
        if (!rep.pass() || rep.checked != (1ull << 25)) return false;
    }
    VerifyOptions sampled;
    sampled.exhaustive = false;
    sampled.samples = 10000;
    sampled.jobs = big.jobs;
    for (StateIndex s = 1; s <= 256; ++s) {
        Transformation g = nth_transformation(s, 2, 2);
        Schedule sched = emit_fast(mc, g);
        if (sched.length() != 13) return false;
        if (!verify_simulation(mc, sched, g, sampled).pass()) return false;
    }
    return true;
}

// 6. The sequential machine works through all 256 targets in one schedule,
// with every boundary checked over all 128 initial states.
bool check_complete() {
    UniversalMachine mc = complete_compact(2, 2);
    std::vector<Transformation> targets;
    for (StateIndex s = 1; s <= 256; ++s) targets.push_back(nth_transformation(s, 2, 2));
    Schedule sched = emit_complete(mc, targets);
    if (sched.boundaries.size() != 256) return false;
    VerificationReport rep = verify_sequential(mc, sched, targets, {});
    return rep.pass() && rep.checked == 128;
}

// 7. The enumeration machine: one pass has the predicted length, covers all
// 256 transformations, and every boundary verifies exhaustively.
bool check_enumeration() {
    UniversalMachine mc = complete_min_time(2, 2);
    if (mc.m > 15) return false;
    Schedule sched = emit_enumeration(mc, 1);
    long long L = mc.params.at("L");
    long long r = mc.params.at("r");
    long long sigma = mc.params.at("sigma");
    if (L < 256) return false;
    if (sched.length() != static_cast<size_t>(L + r + sigma + 3)) return false;
    std::set<std::vector<std::uint32_t>> seen;
    for (const Boundary& b : sched.boundaries) seen.insert(b.expected.table());
    if (seen.size() != 256) return false;
    return verify_sequential(mc, sched, {}, {}).pass();
}

// 8. The catalog machine obeys its length formula, and the all-coordinates
// ordering behind it is sound.
bool check_catalog() {
    std::mt19937_64 rng(19);
    std::vector<std::vector<Transformation>> catalog(2);
    for (auto& seq : catalog)
        for (int t = 0; t < 16; ++t) seq.push_back(random_transformation(2, 2, rng));
    UniversalMachine mc = complete_max_time(2, 2, catalog);
    for (int lam : {1, 2}) {
        std::vector<int> idx(static_cast<size_t>(lam), 1);
        Schedule sched = emit_max(mc, idx);
        if (sched.length() != static_cast<size_t>(2 + 3 + 4 + 3 + lam * (16 * 3 + 2)))
            return false;
        // each enumerated target gets at least n dedicated update steps
        size_t prev = 0;
        for (const Boundary& b : sched.boundaries) {
            if (b.after_step - prev < 2) return false;
            prev = b.after_step;
        }
        if (sched.boundaries.size() != static_cast<size_t>(lam) * 16) return false;
    }
    if (!verify_sequential(mc, emit_max(mc, {2}), {}, {}).pass()) return false;

    auto ord = all_diff_ordering(4, 2);
    if (ord.size() != 16) return false;
    std::set<std::vector<int>> distinct(ord.begin(), ord.end());
    if (distinct.size() != 16) return false;
    for (size_t t = 1; t < ord.size(); ++t)
        for (size_t i = 0; i < 2; ++i)
            if (ord[t][i] == ord[t - 1][i]) return false;
    return true;
}

// 9. No network function simulates two distinct constants in parallel, and
// the conveyor machine verifies exhaustively with a single last-register
// update.
bool check_parallel() {
    for (StateIndex s = 1; s <= 256; ++s) {
        Transformation f = nth_transformation(s, 2, 2);
        int hits = 0;
        for (StateIndex k = 0; k < 4; ++k)
            if (parallel_simulation_search(f, constant_map(k, 2, 2), 512)) ++hits;
        if (hits > 1) return false;
    }
    std::mt19937_64 rng(31);
    std::vector<Transformation> catalog;
    for (int t = 0; t < 3; ++t) catalog.push_back(random_transformation(2, 2, rng));
    catalog.push_back(Transformation::identity(2, 2));
    UniversalMachine mc = quasi_parallel(2, 2, catalog);
    Schedule sched = emit_qp(mc, 2);
    size_t last = 0;
    for (const Step& st : sched.steps)
        if (st.kind == Step::Kind::Last) ++last;
    if (last != 1) return false;
    VerificationReport rep = verify_sequential(mc, sched, {}, {});
    return rep.pass() && rep.checked == (1ull << mc.m);
}

// 10. Gray codes: the frozen 16-word low-run code, run counts of the
// canonical family, strictly improving run density, and the validity oracle
// over the whole construction zoo.
bool check_gray() {
    GrayCode g4 = doubling_gray(4);
    const char* words[16] = {"0000", "0001", "0101", "0111", "1111", "1110", "1010", "1000",
                             "1100", "1101", "1001", "1011", "0011", "0010", "0110", "0100"};
    const int delta[16] = {2, 4, 2, 3, 1, 4, 2, 3, 2, 4, 2, 3, 1, 4, 2, 3};
    for (int t = 0; t < 16; ++t) {
        for (int i = 0; i < 4; ++i)
            if (g4.order[static_cast<size_t>(t)][i] != words[t][i] - '0') return false;
        if (g4.delta[static_cast<size_t>(t)] != delta[t]) return false;
    }
    if (g4.runs.size() != 6) return false;

    for (int n = 2; n <= 16; ++n)
        if (canonical_gray(n, 2).runs.size() != (1u << (n - 1))) return false;

    double prev = 2.0;
    for (int n : {2, 4, 8, 16}) {
        GrayCode g = doubling_gray(n);
        double density = static_cast<double>(g.runs.size()) / static_cast<double>(g.order.size());
        if (density >= prev) return false;
        prev = density;
    }

    for (int n : {1, 2, 3})
        for (int q : {2, 3, 4, 5}) validate_gray(canonical_gray(n, q));
    for (int n : {2, 4, 8, 16}) validate_gray(doubling_gray(n));
    for (int n : {3, 5, 6, 7, 9, 12}) validate_gray(product_gray(n));
    for (int n : {1, 2, 3})
        for (int q : {4, 6}) validate_gray(even_gray(n, q));
    for (int n : {1, 2})
        for (int Q : {3, 4, 5, 6, 8, 16}) validate_pseudo(pseudo_gray(n, Q));
    return true;
}

// 11. The 21-bit single-error code over 16 information bits, exhaustively,
// plus the parity gadget on every alphabet up to 16.
bool check_codes() {
    LinearCode code = shortened_hamming(16);
    if (code.n_hat != 21 || code.r != 5) return false;
    for (unsigned u = 0; u < (1u << 16); ++u) {
        std::vector<int> info(16);
        for (int i = 0; i < 16; ++i) info[static_cast<size_t>(i)] = static_cast<int>((u >> i) & 1u);
        std::vector<int> c = encode(code, info);
        if (decode_error_position(code, c) != 0) return false;
        for (int j = 1; j <= 21; ++j) {
            c[static_cast<size_t>(j - 1)] ^= 1;
            if (decode_error_position(code, c) != j) return false;
            c[static_cast<size_t>(j - 1)] ^= 1;
        }
    }
    for (int q = 2; q <= 16; ++q)
        for (Symbol a = 0; a < q; ++a)
            if ((err_map(a, q) & 1) != 1 - (a & 1)) return false;
    return true;
}

}  // namespace

int main() {
    criterion(1, "three-instruction swap, minimal", 1.0, check_swap);
    criterion(2, "no size-preserving universality", 60.0, check_theorem1);
    criterion(3, "synthesis of arbitrary targets", 0, check_compiler);
    criterion(4, "compact machine, all binary targets", 10.0, check_compact);
    criterion(5, "constant-time machine", 600.0, check_fast);
    criterion(6, "sequential machine, full catalog", 300.0, check_complete);
    criterion(7, "enumeration machine, one pass", 0, check_enumeration);
    criterion(8, "coded catalog machine", 0, check_catalog);
    criterion(9, "parallel simulation limits", 600.0, check_parallel);
    criterion(10, "gray code family", 0, check_gray);
    criterion(11, "single-error code", 60.0, check_codes);
    return failures;
}
