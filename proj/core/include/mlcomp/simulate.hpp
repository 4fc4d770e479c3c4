#pragma once

#include <map>
#include <vector>

#include "mlcomp/machine.hpp"
#include "mlcomp/schedule.hpp"

namespace mlcomp {

// A state of A^m stored as a default symbol plus explicit overrides; handy
// when m is large (elementary machines) and most registers agree.
struct SparseState {
    int m = 0;
    Symbol fill = 0;
    std::map<int, Symbol> overrides;  // 1-based register -> symbol

    SparseState() = default;
    SparseState(int m_, Symbol fill_ = 0) : m(m_), fill(fill_) {}

    Symbol get(int reg) const {
        auto it = overrides.find(reg);
        return it == overrides.end() ? fill : it->second;
    }
    void set(int reg, Symbol v) {
        if (v == fill)
            overrides.erase(reg);
        else
            overrides[reg] = v;
    }
    std::vector<Symbol> dense() const {
        std::vector<Symbol> x(static_cast<size_t>(m), fill);
        for (auto [r, v] : overrides) x[static_cast<size_t>(r - 1)] = v;
        return x;
    }
};

// Runs every step of the schedule; parallel steps evaluate all m-1 rules
// against the pre-step state.  The sparse overload densifies internally.
std::vector<Symbol> run_schedule(const UniversalMachine& mc, const Schedule& sched,
                                 std::vector<Symbol> x);
std::vector<Symbol> run_schedule(const UniversalMachine& mc, const Schedule& sched,
                                 const SparseState& x);

// One step, in place; scratch must have room for m symbols (used by parallel
// steps only).
void apply_step(const UniversalMachine& mc, const Step& step, std::vector<Symbol>& x,
                std::vector<Symbol>& scratch);

}  // namespace mlcomp
