#pragma once

#include <string>
#include <vector>

#include "mlcomp/machine.hpp"
#include "mlcomp/schedule.hpp"
#include "mlcomp/transformation.hpp"

namespace mlcomp {

// Canonical enumerations used by every switch index in this module.
//
// Coordinate functions A^n -> A are numbered 1..q^(q^n) lexicographically by
// value table (entry for state 0 is least significant).  Transformations of
// A^n are numbered 1..q^(n q^n) the same way, with state indices as digits.
std::vector<Symbol> gamma_table(StateIndex s, int q, int n);
StateIndex gamma_index(const std::vector<Symbol>& table, int q);
Transformation nth_transformation(StateIndex s, int n, int q);
StateIndex transformation_ordinal(const Transformation& f);

// One switch (two registers) per transformation of A^n; m = 2n + 2 Q^n.
UniversalMachine elementary_universal(int q, int n);
Schedule emit_elementary(const UniversalMachine& mc,
                         const std::vector<Transformation>& targets);

// Size n+2, dispatching on the switch value (x_{n+2} - x_{n+1}) mod q.
UniversalMachine compact_universal(int q, int n);
Schedule emit_compact(const UniversalMachine& mc, const Transformation& g);

// Size n+2 with a two-position (equal/unequal) switch.
UniversalMachine simple_compact_universal(int q, int n);
Schedule emit_simple_compact(const UniversalMachine& mc, const Transformation& g);

// Size 2n + Q + r with a one-error-locating code as the switch; every target
// takes exactly 4n + r steps.
UniversalMachine fast_universal(int q, int n);
Schedule emit_fast(const UniversalMachine& mc, const Transformation& g);

// Complete sequential simulator: compact core plus copy registers and a
// restore mode.  Size 2n+3 for q = 2, 2n+2 otherwise.
UniversalMachine complete_compact(int q, int n);
Schedule emit_complete(const UniversalMachine& mc,
                       const std::vector<Transformation>& targets);

// Complete simulator enumerating all of Tran(A^n) along a pseudo-Gray code,
// one register update per enumerated target.
UniversalMachine complete_min_time(int q, int n);
Schedule emit_enumeration(const UniversalMachine& mc, int repetitions);

// Complete simulator over a catalog of length-Q target sequences, selected
// by a coded error position and paced by a Gray counter.
UniversalMachine complete_max_time(int q, int n,
                                   const std::vector<std::vector<Transformation>>& catalog);
Schedule emit_max(const UniversalMachine& mc, const std::vector<int>& indices);

// Ordering of Z_Q^n in which consecutive vectors differ in all n coordinates.
std::vector<std::vector<int>> all_diff_ordering(int Q, int n);

// Quasi-parallel simulator: a belt of K+2 n-register blocks, a counter, and
// a reset pair; schedules use parallel steps plus a single update-last.
UniversalMachine quasi_parallel(int q, int n,
                                const std::vector<Transformation>& catalog);
Schedule emit_qp(const UniversalMachine& mc, int repetitions);

// Kind-name dispatcher used by descriptor parsing and the CLI.  The catalog
// is ignored by kinds that do not take one; complete_max_time receives it
// flattened in row-major order (K sequences of Q entries).
UniversalMachine build_machine(const std::string& kind, int q, int n,
                               const std::vector<Transformation>& catalog = {});

}  // namespace mlcomp
