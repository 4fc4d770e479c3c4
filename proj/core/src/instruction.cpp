#include "mlcomp/instruction.hpp"

namespace mlcomp {

Instruction::Instruction(int n_, int q_, int target_, std::vector<Symbol> coord_)
    : n(n_), q(q_), target(target_), coord(std::move(coord_)) {
    StateIndex size = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(n));
    if (target < 1 || target > n)
        throw range_error("instruction target out of range");
    if (coord.size() != size)
        throw shape_error("instruction coordinate table must have q^n entries");
    for (Symbol v : coord)
        if (v < 0 || v >= q)
            throw shape_error("instruction coordinate value out of alphabet");
}

Instruction Instruction::identity(int n, int q, int target) {
    StateIndex size = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(n));
    StateIndex weight = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(target - 1));
    std::vector<Symbol> coord(size);
    for (StateIndex j = 0; j < size; ++j)
        coord[j] = static_cast<Symbol>((j / weight) % static_cast<StateIndex>(q));
    return Instruction(n, q, target, std::move(coord));
}

bool Instruction::is_identity() const {
    StateIndex weight = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(target - 1));
    for (StateIndex j = 0; j < coord.size(); ++j)
        if (coord[j] != static_cast<Symbol>((j / weight) % static_cast<StateIndex>(q)))
            return false;
    return true;
}

Transformation Instruction::as_transformation() const {
    StateIndex weight = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(target - 1));
    std::vector<std::uint32_t> table(coord.size());
    for (StateIndex j = 0; j < coord.size(); ++j) {
        Symbol old = static_cast<Symbol>((j / weight) % static_cast<StateIndex>(q));
        table[j] = static_cast<std::uint32_t>(
            j + (static_cast<StateIndex>(coord[j]) - static_cast<StateIndex>(old)) * weight);
    }
    return Transformation(n, q, std::move(table));
}

void Instruction::apply_in_place(State& x) const {
    if (x.n != n || x.q != q)
        throw shape_error("state shape does not match instruction");
    x.digits[static_cast<size_t>(target - 1)] = coord[lex_index(x)];
}

Instruction induced_instruction(const Transformation& f, int target) {
    return Instruction(f.n(), f.q(), target, f.coordinate_table(target));
}

Instruction instruction_from_transformation(const Transformation& f) {
    int nontrivial = 0;
    for (int i = 1; i <= f.n(); ++i) {
        Instruction cand = induced_instruction(f, i);
        if (!cand.is_identity())
            nontrivial = i;
    }
    int target = nontrivial == 0 ? 1 : nontrivial;
    Instruction result = induced_instruction(f, target);
    if (!(result.as_transformation() == f))
        throw shape_error("transformation updates more than one register");
    return result;
}

std::vector<Instruction> all_instructions(int n, int q) {
    StateIndex size = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(n));
    StateIndex count = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(size));
    std::vector<Instruction> out;
    out.reserve(static_cast<size_t>(count) * static_cast<size_t>(n));
    for (int target = 1; target <= n; ++target) {
        std::vector<Symbol> coord(size, 0);
        for (StateIndex c = 0; c < count; ++c) {
            out.emplace_back(n, q, target, coord);
            for (size_t pos = 0; pos < coord.size(); ++pos) {
                if (++coord[pos] < q)
                    break;
                coord[pos] = 0;
            }
        }
    }
    return out;
}

}  // namespace mlcomp
