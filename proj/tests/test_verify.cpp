#include <doctest.h>

#include <random>
#include <vector>

#include "mlcomp/instruction.hpp"
#include "mlcomp/machines.hpp"
#include "mlcomp/simulate.hpp"
#include "mlcomp/verify.hpp"

using namespace mlcomp;

TEST_CASE("monoid closure of the identity") {
    auto clo = generated_monoid({Transformation::identity(2, 2)}, 100);
    CHECK(clo.complete);
    CHECK(clo.elements.size() == 1);
}

TEST_CASE("permutation instructions generate the symmetric group") {
    std::vector<Transformation> gens;
    for (const Instruction& ins : all_instructions(2, 2))
        if (ins.as_transformation().is_permutation() && !ins.is_identity())
            gens.push_back(ins.as_transformation());
    CHECK(gens.size() == 6);  // 8 permutation instructions, two of them identity
    auto clo = generated_monoid(gens, 100);
    CHECK(clo.complete);
    CHECK(clo.elements.size() == 24);
}

TEST_CASE("all instructions generate the full transformation monoid") {
    std::vector<Transformation> gens;
    for (const Instruction& ins : all_instructions(2, 2)) gens.push_back(ins.as_transformation());
    auto clo = generated_monoid(gens, 300);
    CHECK(clo.complete);
    CHECK(clo.elements.size() == 256);
}

TEST_CASE("no size-preserving universal network") {
    VerificationReport rep = theorem1_check(2, 2);
    CHECK(rep.pass());
    CHECK(rep.checked == 256);
}

TEST_CASE("parallel simulation of simple targets") {
    // f simulates itself in one step
    Transformation f = transposition(0, 1, 2, 2);
    auto k = parallel_simulation_search(f, f, 16);
    REQUIRE(k.has_value());
    CHECK(*k == 1);

    // the identity cannot reach a non-identity image in any number of steps
    CHECK_FALSE(parallel_simulation_search(Transformation::identity(2, 2), f, 1024).has_value());
}

TEST_CASE("witness transformations have rank two") {
    auto ws = witness_sequence(2, 2);
    REQUIRE(ws.size() == 4);
    for (const auto& w : ws) CHECK(rank(w) == 2);
    CHECK(ws[0] != ws[1]);
    CHECK(ws[2].apply_index(2) == 1);
    CHECK(ws[2].apply_index(3) == 0);
}

TEST_CASE("verification rejects a wrong expectation") {
    UniversalMachine mc = compact_universal(2, 2);
    Transformation g = transposition(0, 3, 2, 2);
    Schedule sched = emit_compact(mc, g);
    CHECK(verify_simulation(mc, sched, g, {}).pass());
    Transformation h = assignment(1, 2, 2, 2);
    VerificationReport bad = verify_simulation(mc, sched, h, {});
    CHECK_FALSE(bad.pass());
    CHECK(bad.failures.size() >= 1);
}

TEST_CASE("mutated schedules are caught") {
    UniversalMachine mc = compact_universal(2, 2);
    std::mt19937_64 rng(17);
    int caught = 0, flipped = 0;
    for (int t = 0; t < 50; ++t) {
        Transformation g = random_transformation(2, 2, rng);
        Schedule sched = emit_compact(mc, g);
        if (sched.length() < 2) continue;
        // drop one random step; equivalence may survive by luck, but the
        // verifier must agree with a direct run either way
        size_t at = rng() % sched.length();
        Schedule mut = sched;
        mut.steps.erase(mut.steps.begin() + static_cast<long>(at));
        for (auto& b : mut.boundaries)
            if (b.after_step > at) --b.after_step;
        VerificationReport rep = verify_simulation(mc, mut, g, {});
        bool really_ok = true;
        std::vector<Symbol> scratch(static_cast<size_t>(mc.m));
        for (StateIndex j = 0; j < 16 && really_ok; ++j) {
            State x0 = state_of_index(j, 4, 2);
            std::vector<Symbol> x = x0.digits;
            for (const Step& s : mut.steps) apply_step(mc, s, x, scratch);
            StateIndex got = lex_index(State({x[0], x[1]}, 2));
            StateIndex want =
                g.apply_index(static_cast<std::uint32_t>(j % 4));
            really_ok = got == want;
        }
        ++flipped;
        if (rep.pass() != really_ok) FAIL("verifier disagrees with direct run");
        if (!rep.pass()) ++caught;
    }
    CHECK(flipped > 0);
    CHECK(caught > 0);
}

TEST_CASE("sparse and dense runs agree") {
    UniversalMachine mc = fast_universal(2, 2);
    Transformation g = transposition(1, 2, 2, 2);
    Schedule sched = emit_fast(mc, g);
    std::mt19937_64 rng(23);
    for (int t = 0; t < 1000; ++t) {
        SparseState s(mc.m, 0);
        std::vector<Symbol> dense(static_cast<size_t>(mc.m), 0);
        for (int reg = 1; reg <= mc.m; ++reg) {
            if (rng() & 1) continue;  // leave at the fill value
            Symbol v = static_cast<Symbol>(rng() % 2);
            s.set(reg, v);
            dense[static_cast<size_t>(reg - 1)] = v;
        }
        CHECK(run_schedule(mc, sched, s) == run_schedule(mc, sched, dense));
    }
}

TEST_CASE("exhaustive sweeps refuse oversized state spaces") {
    UniversalMachine mc = fast_universal(2, 2);  // 2^25 states
    Transformation g = Transformation::identity(2, 2);
    Schedule sched = emit_fast(mc, g);
    VerifyOptions opt;  // default budget 2^21
    CHECK_THROWS_AS(verify_simulation(mc, sched, g, opt), budget_error);

    opt.exhaustive = false;
    opt.samples = 200;
    CHECK(verify_simulation(mc, sched, g, opt).pass());
}

TEST_CASE("sampled verification is deterministic across thread counts") {
    UniversalMachine mc = fast_universal(2, 2);
    Transformation g = assignment(0, 3, 2, 2);
    Schedule sched = emit_fast(mc, g);
    VerifyOptions opt;
    opt.exhaustive = false;
    opt.samples = 500;
    VerificationReport one = verify_simulation(mc, sched, g, opt);
    opt.jobs = 4;
    VerificationReport four = verify_simulation(mc, sched, g, opt);
    CHECK(one.pass());
    CHECK(four.pass());
    CHECK(one.checked == four.checked);
    CHECK(one.summary() == four.summary());
}
