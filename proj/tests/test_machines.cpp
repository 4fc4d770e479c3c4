#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "mlcomp/machines.hpp"
#include "mlcomp/simulate.hpp"
#include "mlcomp/verify.hpp"

using namespace mlcomp;

namespace {

Transformation nth(StateIndex s) { return nth_transformation(s, 2, 2); }

std::vector<Transformation> random_targets(int n, int q, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Transformation> out;
    for (int t = 0; t < count; ++t) out.push_back(random_transformation(n, q, rng));
    return out;
}

}  // namespace

TEST_CASE("transformation numbering round-trips") {
    for (StateIndex s = 1; s <= 256; ++s) CHECK(transformation_ordinal(nth(s)) == s);
    CHECK(nth(1).is_identity() == false);  // ordinal 1 is the all-zero table
    std::set<std::vector<std::uint32_t>> seen;
    for (StateIndex s = 1; s <= 256; ++s) seen.insert(nth(s).table());
    CHECK(seen.size() == 256);
}

TEST_CASE("machine sizes") {
    CHECK(elementary_universal(2, 2).m == 516);
    CHECK(compact_universal(2, 2).m == 4);
    CHECK(compact_universal(3, 2).m == 4);
    CHECK(simple_compact_universal(2, 2).m == 4);
    CHECK(fast_universal(2, 2).m == 25);
    CHECK(complete_compact(2, 2).m == 7);
    CHECK(complete_compact(3, 2).m == 6);
    CHECK(complete_min_time(2, 2).m == 2 * 2 + complete_min_time(2, 2).params.at("sigma") + 2);
    CHECK(quasi_parallel(2, 2, {Transformation::identity(2, 2)}).m == 3 * 2 + 2 + 2);
}

TEST_CASE("compact machine computes arbitrary targets") {
    UniversalMachine mc = compact_universal(2, 2);
    VerifyOptions opt;
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
        Transformation g = random_transformation(2, 2, rng);
        auto rep = verify_simulation(mc, emit_compact(mc, g), g, opt);
        CHECK(rep.pass());
        CHECK(rep.checked == 16);
    }
    // identity is a one-step schedule: a single switch reset
    Schedule id_sched = emit_compact(mc, Transformation::identity(2, 2));
    CHECK(id_sched.length() == 1);
    CHECK(verify_simulation(mc, id_sched, Transformation::identity(2, 2), opt).pass());
}

TEST_CASE("compact machine at q=3") {
    UniversalMachine mc = compact_universal(3, 2);
    VerifyOptions opt;
    for (const Transformation& g : random_targets(2, 3, 15, 7)) {
        auto rep = verify_simulation(mc, emit_compact(mc, g), g, opt);
        CHECK(rep.pass());
        CHECK(rep.checked == 81);
    }
}

TEST_CASE("simple compact machine") {
    for (int q : {2, 3}) {
        UniversalMachine mc = simple_compact_universal(q, 2);
        VerifyOptions opt;
        for (const Transformation& g : random_targets(2, q, 10, 13))
            CHECK(verify_simulation(mc, emit_simple_compact(mc, g), g, opt).pass());
    }
}

TEST_CASE("fast machine runs in constant time") {
    UniversalMachine mc = fast_universal(2, 2);
    VerifyOptions opt;
    opt.exhaustive = false;
    opt.samples = 300;
    for (StateIndex s = 1; s <= 256; s += 17) {
        Transformation g = nth(s);
        Schedule sched = emit_fast(mc, g);
        CHECK(sched.length() == 4 * 2 + 5);
        CHECK(verify_simulation(mc, sched, g, opt).pass());
    }
}

TEST_CASE("elementary machine on a couple of targets") {
    UniversalMachine mc = elementary_universal(2, 2);
    std::vector<Transformation> targets = {transposition(0, 3, 2, 2),
                                           assignment(1, 2, 2, 2)};
    Schedule sched = emit_elementary(mc, targets);
    REQUIRE(sched.boundaries.size() == 2);

    // spot-check with sparse initial states: all switches start off
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        SparseState x(mc.m, 0);
        x.set(1, static_cast<Symbol>(rng() & 1));
        x.set(2, static_cast<Symbol>(rng() & 1));
        std::vector<Symbol> input = {x.get(1), x.get(2)};
        std::vector<Symbol> cur = x.dense();
        std::vector<Symbol> scratch(cur.size());
        size_t done = 0;
        for (const Boundary& b : sched.boundaries) {
            while (done < b.after_step) apply_step(mc, sched.steps[done++], cur, scratch);
            // each pass restores the working registers from the copies, so a
            // boundary shows its own target applied to the original input
            State in(input, 2);
            StateIndex want = b.expected.apply_index(static_cast<std::uint32_t>(lex_index(in)));
            State w = state_of_index(want, 2, 2);
            CHECK(cur[0] == w[0]);
            CHECK(cur[1] == w[1]);
        }
    }
}

TEST_CASE("complete sequential machine, binary and ternary") {
    for (int q : {2, 3}) {
        UniversalMachine mc = complete_compact(q, 2);
        std::mt19937_64 rng(29);
        std::vector<Transformation> targets;
        for (int t = 0; t < 3; ++t) targets.push_back(random_transformation(2, q, rng));
        Schedule sched = emit_complete(mc, targets);
        REQUIRE(sched.boundaries.size() == 3);
        auto rep = verify_sequential(mc, sched, targets, {});
        CHECK(rep.pass());
        CHECK(rep.checked == pow_u64(q, static_cast<unsigned>(mc.m)));
    }
}

TEST_CASE("enumeration machine visits every transformation") {
    UniversalMachine mc = complete_min_time(2, 2);
    Schedule sched = emit_enumeration(mc, 1);
    long long L = mc.params.at("L");
    CHECK(sched.boundaries.size() == static_cast<size_t>(L));
    CHECK(L >= 256);
    std::set<std::vector<std::uint32_t>> seen;
    for (const Boundary& b : sched.boundaries) seen.insert(b.expected.table());
    CHECK(seen.size() == 256);
    CHECK(verify_sequential(mc, sched, {}, {}).pass());
}

TEST_CASE("enumeration machine over two passes") {
    UniversalMachine mc = complete_min_time(2, 2);
    Schedule sched = emit_enumeration(mc, 2);
    CHECK(verify_sequential(mc, sched, {}, {}).pass());
}

TEST_CASE("catalog machine length formula") {
    std::mt19937_64 rng(41);
    std::vector<std::vector<Transformation>> catalog(2);
    for (auto& seq : catalog)
        for (int t = 0; t < 16; ++t) seq.push_back(random_transformation(2, 2, rng));
    UniversalMachine mc = complete_max_time(2, 2, catalog);
    CHECK(mc.m == 2 * 2 + 2 + 3 + 4 + 2);
    for (int lam : {1, 2}) {
        std::vector<int> idx(static_cast<size_t>(lam), 1);
        idx.back() = 2;
        Schedule sched = emit_max(mc, idx);
        CHECK(sched.length() == static_cast<size_t>(2 + 3 + 4 + 3 + lam * (16 * 3 + 2)));
        CHECK(sched.boundaries.size() == static_cast<size_t>(lam) * 16);
    }
    Schedule sched = emit_max(mc, {2});
    CHECK(verify_sequential(mc, sched, {}, {}).pass());
}

TEST_CASE("all-coordinates-different ordering") {
    auto ord = all_diff_ordering(4, 2);
    REQUIRE(ord.size() == 16);
    std::set<std::vector<int>> distinct(ord.begin(), ord.end());
    CHECK(distinct.size() == 16);
    for (size_t t = 1; t < ord.size(); ++t)
        for (size_t i = 0; i < 2; ++i) CHECK(ord[t][i] != ord[t - 1][i]);
    CHECK(all_diff_ordering(5, 1).size() == 5);
    CHECK_THROWS_AS(all_diff_ordering(3, 2), range_error);
}

TEST_CASE("quasi-parallel machine") {
    std::mt19937_64 rng(53);
    std::vector<Transformation> catalog;
    for (int t = 0; t < 3; ++t) catalog.push_back(random_transformation(2, 2, rng));
    catalog.push_back(Transformation::identity(2, 2));
    UniversalMachine mc = quasi_parallel(2, 2, catalog);
    CHECK(mc.m == 6 * 2 + 3 + 2);

    Schedule sched = emit_qp(mc, 1);
    size_t last_steps = 0;
    for (const Step& s : sched.steps)
        if (s.kind == Step::Kind::Last) ++last_steps;
    CHECK(last_steps == 1);
    CHECK(verify_sequential(mc, sched, {}, {}).pass());

    CHECK(verify_sequential(mc, emit_qp(mc, 2), {}, {}).pass());

    // repeated passes are refused when the belt cannot refill
    UniversalMachine bad = quasi_parallel(2, 2, {catalog[0], catalog[1]});
    CHECK_THROWS_AS(emit_qp(bad, 2), degenerate_input_error);
}

TEST_CASE("machine descriptors rebuild through the dispatcher") {
    for (const char* kind : {"compact", "simple_compact", "fast"}) {
        UniversalMachine mc = build_machine(kind, 2, 2);
        CHECK(mc.kind == kind);
        CHECK(mc.q == 2);
    }
    CHECK_THROWS_AS(build_machine("nope", 2, 2), error);
}
