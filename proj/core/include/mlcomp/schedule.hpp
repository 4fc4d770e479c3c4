#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mlcomp/transformation.hpp"

namespace mlcomp {

// One scheduled step of a machine run: update a single register, update all
// registers but the last in parallel, or update only the last register.
struct Step {
    enum class Kind { Update, Parallel, Last };
    Kind kind = Kind::Update;
    int reg = 0;  // 1-based, meaningful for Update only

    static Step update(int reg) { return {Kind::Update, reg}; }
    static Step parallel() { return {Kind::Parallel, 0}; }
    static Step last() { return {Kind::Last, 0}; }

    bool operator==(const Step& o) const { return kind == o.kind && reg == o.reg; }
};

// A checkpoint after step `after_step` (1-based count of executed steps) at
// which the first n registers must equal `expected` applied to the initial
// projection.  id numbers the boundary within the schedule.
struct Boundary {
    std::size_t after_step = 0;
    int id = 0;
    Transformation expected;  // may be empty (n == 0) after parsing
};

struct Schedule {
    int m = 0;
    std::vector<Step> steps;
    std::vector<Boundary> boundaries;

    std::size_t length() const { return steps.size(); }
    void push(Step s) { steps.push_back(s); }
    void mark(const Transformation& expected) {
        boundaries.push_back({steps.size(), static_cast<int>(boundaries.size()), expected});
    }
};

std::string schedule_to_text(const Schedule& sched);

// Restores steps and boundary positions; boundary expectations are not part
// of the text format and come back empty.
Schedule parse_schedule_text(const std::string& text);

}  // namespace mlcomp
