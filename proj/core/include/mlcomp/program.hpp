#pragma once

#include <vector>

#include "mlcomp/instruction.hpp"

namespace mlcomp {

// A finite sequence of instructions over a common (n, q), composed left to
// right.  Length counts non-identity steps, matching the convention that
// every instruction in a program differs from the identity.
struct Program {
    std::vector<Instruction> steps;

    Program() = default;
    explicit Program(std::vector<Instruction> s) : steps(std::move(s)) {}

    size_t length() const;
    State run(State x) const;
    Transformation as_transformation(int n, int q) const;

    void append(Instruction ins) { steps.push_back(std::move(ins)); }
    void append(const Program& p);

    // Composes adjacent steps that update the same register and drops
    // identity steps; the computed transformation is unchanged.
    Program fused() const;
};

}  // namespace mlcomp
