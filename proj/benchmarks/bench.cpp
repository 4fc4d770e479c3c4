#include <benchmark/benchmark.h>

#include <random>

#include "mlcomp/compiler.hpp"
#include "mlcomp/gray.hpp"
#include "mlcomp/instruction.hpp"
#include "mlcomp/machines.hpp"
#include "mlcomp/simulate.hpp"
#include "mlcomp/verify.hpp"

using namespace mlcomp;

static void BM_Synthesis(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0));
    GeneratingSet y = generating_set(q, 2);
    std::mt19937_64 rng(1);
    Transformation g = random_transformation(2, q, rng);
    for (auto _ : state) {
        auto rep = transformation_program(y, g);
        benchmark::DoNotOptimize(rep.length);
    }
}
BENCHMARK(BM_Synthesis)->Arg(2)->Arg(3)->Arg(5);

static void BM_MonoidClosure(benchmark::State& state) {
    std::vector<Transformation> gens;
    for (const Instruction& ins : all_instructions(2, 2))
        gens.push_back(ins.as_transformation());
    for (auto _ : state) {
        auto clo = generated_monoid(gens, 300);
        benchmark::DoNotOptimize(clo.elements.size());
    }
}
BENCHMARK(BM_MonoidClosure);

static void BM_GrayDoubling(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        GrayCode g = doubling_gray(n);
        benchmark::DoNotOptimize(g.runs.size());
    }
}
BENCHMARK(BM_GrayDoubling)->Arg(8)->Arg(16);

static void BM_CompactRun(benchmark::State& state) {
    UniversalMachine mc = compact_universal(2, 2);
    std::mt19937_64 rng(2);
    Transformation g = random_transformation(2, 2, rng);
    Schedule sched = emit_compact(mc, g);
    std::vector<Symbol> x0 = {1, 0, 1, 0};
    for (auto _ : state) {
        auto out = run_schedule(mc, sched, x0);
        benchmark::DoNotOptimize(out[0]);
    }
}
BENCHMARK(BM_CompactRun);

static void BM_FastVerifySampled(benchmark::State& state) {
    UniversalMachine mc = fast_universal(2, 2);
    Transformation g = transposition(0, 3, 2, 2);
    Schedule sched = emit_fast(mc, g);
    VerifyOptions opt;
    opt.exhaustive = false;
    opt.samples = 1000;
    for (auto _ : state) {
        auto rep = verify_simulation(mc, sched, g, opt);
        benchmark::DoNotOptimize(rep.checked);
    }
}
BENCHMARK(BM_FastVerifySampled);

BENCHMARK_MAIN();
