#pragma once

#include <optional>
#include <vector>

#include "mlcomp/program.hpp"

namespace mlcomp {

// Symbolic name of a generator from the set Y: the transposition T^(1), the
// assignment A^(2), or a power (I^(i))^exp of a cyclic instruction.  Every
// atom corresponds to exactly one instruction in Y (exp is a power of two
// at most 2^(rho-1)).
struct GenAtom {
    enum class Kind { T1, A2, IPow };
    Kind kind = Kind::T1;
    int reg = 1;   // register for IPow
    int exp = 1;   // exponent for IPow

    bool operator==(const GenAtom&) const = default;
};

// The generating set Y: T^(1), A^(2), and (I^(i))^(2^j) for 1 <= i <= n,
// 0 <= j < rho, with rho = ceil(log2 q).  At most q instructions target any
// single register.
struct GeneratingSet {
    int n = 0;
    int q = 2;
    int rho = 1;
    Instruction t1;
    Instruction a2;
    // i_pow[i-1][j] = (I^(i))^(2^j)
    std::vector<std::vector<Instruction>> i_pow;

    Instruction atom_instruction(const GenAtom& atom) const;
    std::vector<Instruction> instructions() const;
};

GeneratingSet generating_set(int q, int n);

// Per-phase accounting for a synthesized program.
struct BoundTerms {
    size_t transposition_count = 0;   // T^(k) factors expanded
    size_t total_weight = 0;          // sum of w(k) over those factors
    size_t assignment_count = 0;      // A^(2) factors
    size_t kernel_chain = 0;          // factors in the step (iii) kernel chain
    size_t raw_length = 0;            // instructions before fusing
};

struct SynthesisReport {
    Program program;                  // fused program over Y-instruction tables
    std::vector<GenAtom> generators;  // unfused symbolic Y-sequence
    size_t length = 0;                // program.length()
    BoundTerms bound_terms;
};

// Number of non-zero coordinates of a state.
int weight(const State& k);

// Program over Y computing (I^(i))^lambda via the binary expansion of
// lambda; 1 <= lambda <= q-1.
std::vector<GenAtom> power_atoms(const GeneratingSet& y, int i, int lambda);
Program power_program(const GeneratingSet& y, int i, int lambda);

// Program over Y computing the transposition T^(k) = (0, k), k != 0.
SynthesisReport transposition_program(const GeneratingSet& y, const State& k);

// Program over Y computing an arbitrary permutation.
SynthesisReport permutation_program(const GeneratingSet& y, const Transformation& pi);

// Program over Y computing an arbitrary transformation (Theorem 2).
SynthesisReport transformation_program(const GeneratingSet& y, const Transformation& g);

// The three-instruction swap of two variables over Z_q.
Program swap_program(int q);

struct ComplexityResult {
    std::optional<size_t> length;  // empty: not found within budget
    bool complete = false;         // closure reached a fixpoint under the cap
};

// Breadth-first memoryless complexity of g over the given instruction set.
ComplexityResult exact_complexity(const Transformation& g,
                                  const std::vector<Instruction>& generators,
                                  size_t budget);

}  // namespace mlcomp
