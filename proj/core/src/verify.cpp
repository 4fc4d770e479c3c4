#include "mlcomp/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "mlcomp/instruction.hpp"
#include "mlcomp/simulate.hpp"
#include "mlcomp/types.hpp"

namespace mlcomp {

namespace {

std::string render_mode(const VerificationReport& r) {
    if (r.exhaustive) return "exhaustive";
    return "sampled(" + std::to_string(r.samples) + ")";
}

// Little-endian increment of a base-q digit vector; register 1 is fastest.
void increment_digits(std::vector<Symbol>& d, int q) {
    for (auto& v : d) {
        if (++v < q) return;
        v = 0;
    }
}

StateIndex projection_index(const std::vector<Symbol>& x, int n, int q) {
    StateIndex idx = 0, w = 1;
    for (int i = 0; i < n; ++i) {
        idx += static_cast<StateIndex>(x[static_cast<size_t>(i)]) * w;
        w *= static_cast<StateIndex>(q);
    }
    return idx;
}

struct SweepPlan {
    bool exhaustive = true;
    StateIndex total = 0;                          // states to visit
    std::vector<std::vector<Symbol>> samples;      // filled in sampled mode
};

SweepPlan plan_sweep(const UniversalMachine& mc, const VerifyOptions& opt) {
    SweepPlan plan;
    plan.exhaustive = opt.exhaustive;
    if (opt.exhaustive) {
        StateIndex total = 1;
        for (int i = 0; i < mc.m; ++i) {
            total *= static_cast<StateIndex>(mc.q);
            if (total > opt.budget)
                throw budget_error("state space exceeds the exhaustive budget of " +
                                   std::to_string(opt.budget) + " states");
        }
        plan.total = total;
        return plan;
    }
    std::mt19937_64 rng(opt.seed);
    plan.total = opt.samples;
    plan.samples.reserve(opt.samples);
    for (std::uint64_t s = 0; s < opt.samples; ++s) {
        std::vector<Symbol> x(static_cast<size_t>(mc.m));
        for (auto& v : x) v = static_cast<Symbol>(rng() % static_cast<std::uint64_t>(mc.q));
        plan.samples.push_back(std::move(x));
    }
    return plan;
}

// Runs `check` over every planned initial state, splitting across workers.
// check(initial, scratch-failures) appends failures; merge order is by
// worker rank, so reports are deterministic for a fixed plan.
template <class Check>
void sweep(const UniversalMachine& mc, const SweepPlan& plan, int jobs,
           std::size_t max_failures, std::vector<VerificationReport::Failure>& out,
           Check check) {
    const int workers = std::max(1, jobs);
    std::vector<std::vector<VerificationReport::Failure>> found(static_cast<size_t>(workers));
    auto work = [&](int w) {
        StateIndex lo = plan.total * static_cast<StateIndex>(w) / static_cast<StateIndex>(workers);
        StateIndex hi = plan.total * static_cast<StateIndex>(w + 1) / static_cast<StateIndex>(workers);
        if (lo >= hi) return;
        std::vector<Symbol> x;
        if (plan.exhaustive) {
            // decode lo once, then step by increments
            x.assign(static_cast<size_t>(mc.m), 0);
            StateIndex v = lo;
            for (int i = 0; i < mc.m; ++i) {
                x[static_cast<size_t>(i)] = static_cast<Symbol>(v % static_cast<StateIndex>(mc.q));
                v /= static_cast<StateIndex>(mc.q);
            }
        }
        for (StateIndex s = lo; s < hi; ++s) {
            const std::vector<Symbol>& initial =
                plan.exhaustive ? x : plan.samples[static_cast<size_t>(s)];
            check(initial, found[static_cast<size_t>(w)]);
            if (found[static_cast<size_t>(w)].size() >= max_failures) break;
            if (plan.exhaustive) increment_digits(x, mc.q);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (auto& part : found)
        for (auto& f : part)
            if (out.size() < max_failures) out.push_back(std::move(f));
}

}  // namespace

std::string VerificationReport::summary() const {
    std::ostringstream out;
    out << "what: " << what << "\n";
    out << "mode: " << render_mode(*this) << "\n";
    if (!exhaustive) out << "seed: " << seed << "\n";
    out << "checked: " << checked << "\n";
    out << "schedule_length: " << schedule_length << "\n";
    out << "failures: " << failures.size() << "\n";
    out << "result: " << (pass() ? "pass" : "FAIL") << "\n";
    for (const auto& f : failures) {
        out << "counterexample:";
        for (Symbol v : f.initial) out << ' ' << v;
        if (f.at != static_cast<std::size_t>(-1)) out << " (boundary " << f.at << ")";
        out << "\n";
    }
    return out.str();
}

std::string VerificationReport::json() const {
    std::ostringstream out;
    out << "{\"what\":\"" << what << "\",\"mode\":\"" << render_mode(*this)
        << "\",\"seed\":" << seed << ",\"checked\":" << checked
        << ",\"schedule_length\":" << schedule_length
        << ",\"failures\":" << failures.size()
        << ",\"pass\":" << (pass() ? "true" : "false") << "}";
    return out.str();
}

VerificationReport verify_simulation(const UniversalMachine& mc, const Schedule& sched,
                                     const Transformation& g, const VerifyOptions& opt) {
    if (g.n() != mc.n || g.q() != mc.q)
        throw shape_error("target does not act on the machine's A^n");
    VerificationReport rep;
    rep.what = mc.kind + " simulation";
    rep.exhaustive = opt.exhaustive;
    rep.samples = opt.exhaustive ? 0 : opt.samples;
    rep.seed = opt.seed;
    rep.schedule_length = sched.steps.size();

    SweepPlan plan = plan_sweep(mc, opt);
    rep.checked = plan.total;
    sweep(mc, plan, opt.jobs, opt.max_failures, rep.failures,
          [&](const std::vector<Symbol>& initial, std::vector<VerificationReport::Failure>& bad) {
              thread_local std::vector<Symbol> x, scratch;
              x = initial;
              for (const Step& s : sched.steps) apply_step(mc, s, x, scratch);
              StateIndex got = projection_index(x, mc.n, mc.q);
              StateIndex want = g.apply_index(
                  static_cast<std::uint32_t>(projection_index(initial, mc.n, mc.q)));
              if (got != want) bad.push_back({initial, static_cast<std::size_t>(-1)});
          });
    return rep;
}

VerificationReport verify_sequential(const UniversalMachine& mc, const Schedule& sched,
                                     const std::vector<Transformation>& targets,
                                     const VerifyOptions& opt) {
    const std::vector<Boundary>& bounds = sched.boundaries;
    std::vector<const Transformation*> expected;
    if (targets.empty()) {
        for (const Boundary& b : bounds) {
            if (b.expected.domain_size() == 0)
                throw shape_error("schedule carries no boundary expectations");
            expected.push_back(&b.expected);
        }
    } else {
        if (targets.size() != bounds.size())
            throw shape_error("target list does not align with the schedule's boundaries");
        for (const Transformation& t : targets) expected.push_back(&t);
    }
    for (const Transformation* t : expected)
        if (t->n() != mc.n || t->q() != mc.q)
            throw shape_error("target does not act on the machine's A^n");

    VerificationReport rep;
    rep.what = mc.kind + " sequential simulation";
    rep.exhaustive = opt.exhaustive;
    rep.samples = opt.exhaustive ? 0 : opt.samples;
    rep.seed = opt.seed;
    rep.schedule_length = sched.steps.size();

    SweepPlan plan = plan_sweep(mc, opt);
    rep.checked = plan.total;
    sweep(mc, plan, opt.jobs, opt.max_failures, rep.failures,
          [&](const std::vector<Symbol>& initial, std::vector<VerificationReport::Failure>& bad) {
              thread_local std::vector<Symbol> x, scratch;
              x = initial;
              StateIndex origin = projection_index(initial, mc.n, mc.q);
              std::size_t b = 0;
              for (std::size_t i = 0; i < sched.steps.size(); ++i) {
                  apply_step(mc, sched.steps[i], x, scratch);
                  while (b < bounds.size() && bounds[b].after_step == i + 1) {
                      StateIndex got = projection_index(x, mc.n, mc.q);
                      StateIndex want =
                          expected[b]->apply_index(static_cast<std::uint32_t>(origin));
                      if (got != want) {
                          bad.push_back({initial, b});
                          return;
                      }
                      ++b;
                  }
              }
          });
    return rep;
}

MonoidClosure generated_monoid(const std::vector<Transformation>& generators,
                               std::size_t cap) {
    MonoidClosure out;
    if (generators.empty()) {
        out.complete = true;
        return out;
    }
    const int n = generators[0].n(), q = generators[0].q();
    for (const Transformation& g : generators)
        if (g.n() != n || g.q() != q) throw shape_error("generators over different A^n");

    std::map<std::vector<std::uint32_t>, std::size_t> seen;
    std::size_t head = 0;
    for (const Transformation& g : generators) {
        if (seen.emplace(g.table(), out.elements.size()).second) {
            out.elements.push_back(g);
            out.lengths.push_back(1);
        }
    }
    out.complete = true;
    while (head < out.elements.size()) {
        if (out.elements.size() > cap) {
            out.complete = false;
            break;
        }
        Transformation cur = out.elements[head];
        std::size_t len = out.lengths[head];
        ++head;
        for (const Transformation& g : generators) {
            Transformation next = compose(cur, g);
            if (seen.emplace(next.table(), out.elements.size()).second) {
                out.elements.push_back(std::move(next));
                out.lengths.push_back(len + 1);
            }
        }
    }
    return out;
}

VerificationReport theorem1_check(int q, int n) {
    const StateIndex qn = pow_u64(q, static_cast<unsigned>(n));
    const StateIndex count = pow_u64(qn, static_cast<unsigned>(qn));  // |Tran(A^n)|
    VerificationReport rep;
    rep.what = "no instruction tuple generates Sing(A^" + std::to_string(n) + ")";
    rep.exhaustive = true;

    // All singular transformations, as canonical tables.
    std::vector<std::vector<std::uint32_t>> singular;
    {
        std::vector<std::uint32_t> table(qn);
        for (StateIndex s = 0; s < count; ++s) {
            StateIndex v = s;
            std::vector<bool> hit(qn, false);
            for (StateIndex j = 0; j < qn; ++j) {
                table[j] = static_cast<std::uint32_t>(v % qn);
                hit[table[j]] = true;
                v /= qn;
            }
            if (std::find(hit.begin(), hit.end(), false) != hit.end())
                singular.push_back(table);
        }
        std::sort(singular.begin(), singular.end());
    }

    for (StateIndex s = 0; s < count; ++s) {
        std::vector<std::uint32_t> table(qn);
        StateIndex v = s;
        for (StateIndex j = 0; j < qn; ++j) {
            table[j] = static_cast<std::uint32_t>(v % qn);
            v /= qn;
        }
        Transformation f(n, q, table);
        std::vector<Transformation> gens;
        for (int i = 1; i <= n; ++i) gens.push_back(induced_instruction(f, i).as_transformation());
        MonoidClosure cl = generated_monoid(gens, count);
        std::vector<std::vector<std::uint32_t>> tables;
        tables.reserve(cl.elements.size());
        for (const Transformation& h : cl.elements) tables.push_back(h.table());
        std::sort(tables.begin(), tables.end());
        bool covers = std::includes(tables.begin(), tables.end(), singular.begin(), singular.end());
        ++rep.checked;
        if (covers && rep.failures.size() < 8) {
            std::vector<Symbol> digits;
            for (std::uint32_t t : f.table()) digits.push_back(static_cast<Symbol>(t));
            rep.failures.push_back({digits, static_cast<std::size_t>(-1)});
        }
    }
    return rep;
}

std::optional<std::uint64_t> parallel_simulation_search(const Transformation& f,
                                                        const Transformation& g,
                                                        std::uint64_t max_k) {
    if (f.n() < g.n() || f.q() != g.q()) throw shape_error("f cannot project onto g's domain");
    const int q = f.q(), n = g.n();
    const StateIndex qn = pow_u64(q, static_cast<unsigned>(n));
    auto matches = [&](const Transformation& h) {
        for (StateIndex x = 0; x < h.domain_size(); ++x) {
            if (h.apply_index(static_cast<std::uint32_t>(x)) % qn !=
                g.apply_index(static_cast<std::uint32_t>(x % qn)))
                return false;
        }
        return true;
    };
    std::map<std::vector<std::uint32_t>, std::uint64_t> seen;
    Transformation h = f;
    for (std::uint64_t k = 1; k <= max_k; ++k) {
        if (!seen.emplace(h.table(), k).second) return std::nullopt;  // orbit closed
        if (matches(h)) return k;
        h = compose(h, f);
    }
    return std::nullopt;
}

std::vector<Transformation> witness_sequence(int q, int n) {
    const StateIndex qn = pow_u64(q, static_cast<unsigned>(n));
    std::vector<Transformation> out;
    out.reserve(qn);
    for (StateIndex k = 0; k < qn; ++k) {
        std::vector<std::uint32_t> table(qn, 0);
        table[k] = 1;  // the state e^1 = (1, 0, ..., 0)
        out.emplace_back(n, q, std::move(table));
    }
    return out;
}

}  // namespace mlcomp
