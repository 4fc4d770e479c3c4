#include "mlcomp/simulate.hpp"

#include "mlcomp/types.hpp"

namespace mlcomp {

void apply_step(const UniversalMachine& mc, const Step& step, std::vector<Symbol>& x,
                std::vector<Symbol>& scratch) {
    const int m = mc.m;
    switch (step.kind) {
        case Step::Kind::Update: {
            if (step.reg < 1 || step.reg > m) throw range_error("step register out of range");
            x[static_cast<size_t>(step.reg - 1)] =
                mc.rules[static_cast<size_t>(step.reg - 1)].eval(x);
            break;
        }
        case Step::Kind::Parallel: {
            scratch.resize(static_cast<size_t>(m));
            for (int i = 0; i < m - 1; ++i)
                scratch[static_cast<size_t>(i)] = mc.rules[static_cast<size_t>(i)].eval(x);
            for (int i = 0; i < m - 1; ++i) x[static_cast<size_t>(i)] = scratch[static_cast<size_t>(i)];
            break;
        }
        case Step::Kind::Last: {
            x[static_cast<size_t>(m - 1)] = mc.rules[static_cast<size_t>(m - 1)].eval(x);
            break;
        }
    }
}

std::vector<Symbol> run_schedule(const UniversalMachine& mc, const Schedule& sched,
                                 std::vector<Symbol> x) {
    if (static_cast<int>(x.size()) != mc.m)
        throw shape_error("state width does not match the machine");
    std::vector<Symbol> scratch;
    for (const Step& s : sched.steps) apply_step(mc, s, x, scratch);
    return x;
}

std::vector<Symbol> run_schedule(const UniversalMachine& mc, const Schedule& sched,
                                 const SparseState& x) {
    if (x.m != mc.m) throw shape_error("state width does not match the machine");
    return run_schedule(mc, sched, x.dense());
}

}  // namespace mlcomp
