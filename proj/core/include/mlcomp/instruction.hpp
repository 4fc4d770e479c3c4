#pragma once

#include <vector>

#include "mlcomp/transformation.hpp"

namespace mlcomp {

// An instruction updates a single register: x_target <- coord(x).  Viewed as a
// transformation, every other coordinate function is a projection.
struct Instruction {
    int n = 0;
    int q = 2;
    int target = 1;                  // 1-based register index
    std::vector<Symbol> coord;       // value table over all q^n states

    Instruction() = default;
    Instruction(int n_, int q_, int target_, std::vector<Symbol> coord_);

    static Instruction identity(int n, int q, int target = 1);

    bool is_identity() const;
    Transformation as_transformation() const;
    void apply_in_place(State& x) const;

    bool operator==(const Instruction&) const = default;
};

// The instruction induced by the target-th coordinate function of f.
Instruction induced_instruction(const Transformation& f, int target);

// Recovers an Instruction from a transformation with at most one nontrivial
// coordinate function; throws shape_error otherwise.
Instruction instruction_from_transformation(const Transformation& f);

// All n * q^(q^n) instructions of A^n, one per (target, coordinate table)
// pair; the identity appears once per target.
std::vector<Instruction> all_instructions(int n, int q);

}  // namespace mlcomp
