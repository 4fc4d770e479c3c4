#include "mlcomp/program.hpp"

namespace mlcomp {

size_t Program::length() const {
    size_t len = 0;
    for (const auto& ins : steps)
        if (!ins.is_identity())
            ++len;
    return len;
}

State Program::run(State x) const {
    for (const auto& ins : steps)
        ins.apply_in_place(x);
    return x;
}

Transformation Program::as_transformation(int n, int q) const {
    Transformation f = Transformation::identity(n, q);
    for (const auto& ins : steps) {
        if (ins.n != n || ins.q != q)
            throw shape_error("program step has mismatched shape");
        f = compose(f, ins.as_transformation());
    }
    return f;
}

void Program::append(const Program& p) {
    steps.insert(steps.end(), p.steps.begin(), p.steps.end());
}

Program Program::fused() const {
    Program out;
    for (const auto& ins : steps) {
        if (ins.is_identity())
            continue;
        if (!out.steps.empty() && out.steps.back().target == ins.target) {
            const Instruction& prev = out.steps.back();
            StateIndex weight = pow_u64(static_cast<StateIndex>(ins.q),
                                        static_cast<unsigned>(ins.target - 1));
            std::vector<Symbol> coord(ins.coord.size());
            for (StateIndex j = 0; j < coord.size(); ++j) {
                Symbol old = static_cast<Symbol>((j / weight) % static_cast<StateIndex>(ins.q));
                StateIndex mid = j + (static_cast<StateIndex>(prev.coord[j]) -
                                      static_cast<StateIndex>(old)) * weight;
                coord[j] = ins.coord[mid];
            }
            Instruction combined(ins.n, ins.q, ins.target, std::move(coord));
            out.steps.pop_back();
            if (!combined.is_identity())
                out.steps.push_back(std::move(combined));
        } else {
            out.steps.push_back(ins);
        }
    }
    return out;
}

}  // namespace mlcomp
