// mlcomp: build, compile, schedule, and verify register-machine simulations.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlcomp/compiler.hpp"
#include "mlcomp/gray.hpp"
#include "mlcomp/hamming.hpp"
#include "mlcomp/machines.hpp"
#include "mlcomp/simulate.hpp"
#include "mlcomp/text_io.hpp"
#include "mlcomp/verify.hpp"

namespace {

using namespace mlcomp;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
    int q = 2;
    int n = 2;
    std::string machine = "compact";
    std::string kind = "canonical";
    std::string target_path;
    std::string targets_path;
    std::string catalog_path;
    std::string out_path;
    bool all_targets = false;
    bool exhaustive = false;
    bool stats = false;
    std::uint64_t sample = 10000;
    std::uint64_t seed = 0x6d6c636f;
    std::uint64_t budget = 1ull << 21;
    std::uint64_t max_k = 1 << 10;
    int jobs = 1;
    int repetitions = 1;
};

void emit_output(const Options& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
    } else {
        save_text(opt.out_path, text);
        std::cout << "wrote " << opt.out_path << "\n";
    }
}

std::vector<Transformation> load_transformations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    std::vector<Transformation> out;
    while (true) {
        int c = in.peek();
        if (c == EOF) break;
        if (c == '\n' || c == ' ' || c == '\r' || c == '\t') {
            in.get();
            continue;
        }
        out.push_back(parse_transformation(in));
    }
    if (out.empty()) throw error(path + " holds no transformations");
    return out;
}

VerifyOptions verify_options(const Options& opt) {
    VerifyOptions v;
    v.exhaustive = opt.exhaustive;
    v.samples = opt.sample;
    v.seed = opt.seed;
    v.budget = opt.budget;
    v.jobs = opt.jobs;
    return v;
}

std::vector<Transformation> all_targets_of(int q, int n) {
    StateIndex qn = pow_u64(q, static_cast<unsigned>(n));
    StateIndex count = pow_u64(qn, static_cast<unsigned>(qn));
    std::vector<Transformation> out;
    out.reserve(count);
    for (StateIndex s = 1; s <= count; ++s) out.push_back(nth_transformation(s, n, q));
    return out;
}

int cmd_compile(const Options& opt) {
    Transformation g = load_transformation(opt.target_path);
    GeneratingSet y = generating_set(opt.q, opt.n);
    SynthesisReport rep = transformation_program(y, g);
    std::ostringstream head;
    head << "# length " << rep.length << ", generators " << rep.generators.size() << "\n";
    emit_output(opt, head.str() + to_text(rep.program, opt.n, opt.q));
    return kExitPass;
}

int cmd_gray(const Options& opt) {
    std::ostringstream out;
    auto print_states = [&](const auto& order) {
        for (const State& s : order) {
            for (int i = 0; i < s.n; ++i) out << (i ? " " : "") << s.digits[static_cast<size_t>(i)];
            out << "\n";
        }
    };
    if (opt.kind == "pseudo") {
        PseudoGrayCode p = pseudo_gray(opt.n, opt.q);
        print_states(p.order);
        if (opt.stats)
            out << "runs: " << p.runs.size() << "\nredundancy: " << p.redundancy << "\n";
    } else {
        GrayCode g;
        if (opt.kind == "canonical")
            g = canonical_gray(opt.n, opt.q);
        else if (opt.kind == "doubling")
            g = doubling_gray(opt.n);
        else if (opt.kind == "product")
            g = product_gray(opt.n);
        else if (opt.kind == "even")
            g = even_gray(opt.n, opt.q);
        else
            throw error("unknown gray kind '" + opt.kind + "'");
        print_states(g.order);
        if (opt.stats) out << "runs: " << g.runs.size() << "\n";
    }
    emit_output(opt, out.str());
    return kExitPass;
}

int cmd_code(const Options& opt) {
    LinearCode code = shortened_hamming(opt.n);
    std::ostringstream out;
    out << "k: " << code.k << "\nr: " << code.r << "\nn_hat: " << code.n_hat << "\n";
    for (const auto& row : code.generator) {
        for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
        out << "\n";
    }
    emit_output(opt, out.str());
    return kExitPass;
}

UniversalMachine make_machine(const Options& opt) {
    std::vector<Transformation> catalog;
    if (!opt.catalog_path.empty()) catalog = load_transformations(opt.catalog_path);
    return build_machine(opt.machine, opt.q, opt.n, catalog);
}

int cmd_build(const Options& opt) {
    emit_output(opt, machine_to_text(make_machine(opt)));
    return kExitPass;
}

Schedule schedule_for(const UniversalMachine& mc, const Options& opt,
                      const std::vector<Transformation>& targets) {
    if (mc.kind == "elementary") return emit_elementary(mc, targets);
    if (mc.kind == "compact") return emit_compact(mc, targets.at(0));
    if (mc.kind == "simple_compact") return emit_simple_compact(mc, targets.at(0));
    if (mc.kind == "fast") return emit_fast(mc, targets.at(0));
    if (mc.kind == "complete_compact") return emit_complete(mc, targets);
    if (mc.kind == "complete_min_time") return emit_enumeration(mc, opt.repetitions);
    if (mc.kind == "quasi_parallel") return emit_qp(mc, opt.repetitions);
    if (mc.kind == "complete_max_time") {
        // run catalog entry 1, --sequence times
        std::vector<int> idx(static_cast<size_t>(std::max(1, opt.repetitions)), 1);
        return emit_max(mc, idx);
    }
    throw error("no emitter for machine kind '" + mc.kind + "'");
}

std::vector<Transformation> gather_targets(const Options& opt) {
    std::vector<Transformation> targets;
    if (opt.all_targets)
        targets = all_targets_of(opt.q, opt.n);
    else if (!opt.targets_path.empty())
        targets = load_transformations(opt.targets_path);
    else if (!opt.target_path.empty())
        targets.push_back(load_transformation(opt.target_path));
    return targets;
}

int cmd_simulate(const Options& opt) {
    UniversalMachine mc = make_machine(opt);
    std::vector<Transformation> targets = gather_targets(opt);
    Schedule sch = schedule_for(mc, opt, targets);
    emit_output(opt, schedule_to_text(sch));

    // quick sampled sanity run so a bad schedule is caught immediately
    VerifyOptions v = verify_options(opt);
    v.exhaustive = false;
    v.samples = std::min<std::uint64_t>(opt.sample, 100);
    VerificationReport rep = sch.boundaries.empty() || sch.boundaries.back().expected.domain_size() == 0
                                 ? VerificationReport{}
                                 : verify_sequential(mc, sch, {}, v);
    if (!rep.what.empty()) std::cout << rep.summary();
    return rep.pass() ? kExitPass : kExitFail;
}

int cmd_verify(const Options& opt) {
    UniversalMachine mc = make_machine(opt);
    VerifyOptions v = verify_options(opt);
    std::vector<Transformation> targets = gather_targets(opt);

    if (mc.kind == "complete_compact" || mc.kind == "complete_min_time" ||
        mc.kind == "quasi_parallel" || mc.kind == "complete_max_time" ||
        mc.kind == "elementary") {
        if (targets.empty() &&
            (mc.kind == "complete_compact" || mc.kind == "elementary"))
            targets = all_targets_of(opt.q, opt.n);
        Schedule sch = schedule_for(mc, opt, targets);
        VerificationReport rep = verify_sequential(mc, sch, {}, v);
        std::cout << rep.summary();
        return rep.pass() ? kExitPass : kExitFail;
    }

    if (targets.empty()) throw error("verify needs --target, --targets, or --all-targets");
    std::uint64_t passed = 0;
    bool ok = true;
    for (const Transformation& g : targets) {
        Schedule sch = schedule_for(mc, opt, {g});
        VerificationReport rep = verify_simulation(mc, sch, g, v);
        if (rep.pass())
            ++passed;
        else {
            ok = false;
            std::cout << rep.summary();
        }
    }
    std::cout << passed << "/" << targets.size() << " pass\n";
    return ok ? kExitPass : kExitFail;
}

int cmd_check_theorem1(const Options& opt) {
    VerificationReport rep = theorem1_check(opt.q, opt.n);
    std::cout << rep.summary();
    return rep.pass() ? kExitPass : kExitFail;
}

int cmd_check_parallel(const Options& opt) {
    // Exhaustive impossibility check: no f on A^n parallel-simulates two
    // distinct constant maps.
    const StateIndex qn = pow_u64(opt.q, static_cast<unsigned>(opt.n));
    const StateIndex count = pow_u64(qn, static_cast<unsigned>(qn));
    std::vector<Transformation> constants;
    for (StateIndex c = 0; c < qn; ++c) {
        std::vector<std::uint32_t> table(qn, static_cast<std::uint32_t>(c));
        constants.emplace_back(opt.n, opt.q, std::move(table));
    }
    std::uint64_t culprits = 0, checked = 0;
    for (StateIndex s = 1; s <= count; ++s) {
        Transformation f = nth_transformation(s, opt.n, opt.q);
        std::vector<bool> simulated(qn, false);
        int hits = 0;
        for (StateIndex c = 0; c < qn && hits < 2; ++c)
            if (parallel_simulation_search(f, constants[static_cast<size_t>(c)], opt.max_k)) {
                simulated[static_cast<size_t>(c)] = true;
                ++hits;
            }
        if (hits >= 2) ++culprits;
        ++checked;
    }
    std::cout << "checked: " << checked << "\n"
              << "simulating two constants: " << culprits << "\n"
              << "result: " << (culprits == 0 ? "pass" : "FAIL") << "\n";
    return culprits == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"memoryless computation and universal machine toolkit"};
    app.set_version_flag("--version", "mlcomp 0.1.0");
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--q", opt.q, "alphabet size");
        sub->add_option("--n", opt.n, "number of simulated registers");
        sub->add_option("--out", opt.out_path, "output file (default stdout)");
    };
    auto add_verify_flags = [&](CLI::App* sub) {
        sub->add_flag("--exhaustive", opt.exhaustive, "enumerate all initial states");
        sub->add_option("--sample", opt.sample, "sampled initial states");
        sub->add_option("--seed", opt.seed, "sampling seed");
        sub->add_option("--budget", opt.budget, "exhaustive state budget");
        sub->add_option("--jobs", opt.jobs, "worker threads");
    };
    auto add_machine_flags = [&](CLI::App* sub) {
        sub->add_option("--machine", opt.machine, "machine kind");
        sub->add_option("--target", opt.target_path, "transformation file");
        sub->add_option("--targets", opt.targets_path, "file of transformations");
        sub->add_option("--catalog", opt.catalog_path, "catalog transformation file");
        sub->add_option("--sequence", opt.repetitions, "enumeration repetitions");
        sub->add_flag("--all-targets", opt.all_targets, "every transformation of A^n");
    };

    CLI::App* c_compile = app.add_subcommand("compile", "synthesize a program for a target");
    add_common(c_compile);
    c_compile->add_option("--target", opt.target_path, "transformation file")->required();

    CLI::App* c_gray = app.add_subcommand("gray", "construct a (pseudo-)Gray code");
    add_common(c_gray);
    c_gray->add_option("--kind", opt.kind, "canonical|doubling|product|even|pseudo");
    c_gray->add_flag("--stats", opt.stats, "print run statistics");

    CLI::App* c_code = app.add_subcommand("code", "shortened Hamming code for k = --n info bits");
    add_common(c_code);

    CLI::App* c_build = app.add_subcommand("build", "write a machine descriptor");
    add_common(c_build);
    add_machine_flags(c_build);

    CLI::App* c_sim = app.add_subcommand("simulate", "emit a schedule and spot-check it");
    add_common(c_sim);
    add_machine_flags(c_sim);
    add_verify_flags(c_sim);

    CLI::App* c_verify = app.add_subcommand("verify", "verify simulation equations");
    add_common(c_verify);
    add_machine_flags(c_verify);
    add_verify_flags(c_verify);

    CLI::App* c_t1 = app.add_subcommand("check-theorem1", "no tuple generates Sing(A^n)");
    add_common(c_t1);

    CLI::App* c_par = app.add_subcommand("check-parallel", "parallel-simulation impossibility");
    add_common(c_par);
    c_par->add_option("--max-k", opt.max_k, "power cap per transformation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (c_compile->parsed()) return cmd_compile(opt);
        if (c_gray->parsed()) return cmd_gray(opt);
        if (c_code->parsed()) return cmd_code(opt);
        if (c_build->parsed()) return cmd_build(opt);
        if (c_sim->parsed()) return cmd_simulate(opt);
        if (c_verify->parsed()) return cmd_verify(opt);
        if (c_t1->parsed()) return cmd_check_theorem1(opt);
        if (c_par->parsed()) return cmd_check_parallel(opt);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
