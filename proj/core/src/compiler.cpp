#include "mlcomp/compiler.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace mlcomp {

namespace {

StateIndex reg_weight(int i, int q) {
    StateIndex w = 1;
    for (int t = 1; t < i; ++t) w *= static_cast<StateIndex>(q);
    return w;
}

int digit_of(StateIndex j, int i, int q) {
    return static_cast<int>((j / reg_weight(i, q)) % static_cast<StateIndex>(q));
}

void check_registers(const GeneratingSet& y, int n, int q) {
    if (n != y.n || q != y.q)
        throw shape_error("generating set shape mismatch");
}

// Multiplicative order of I^(i): register 1 mixes a (q-1)-cycle with
// q-cycles, every other register has q-cycles only.
int cycle_order(const GeneratingSet& y, int i) {
    return i == 1 ? std::lcm(y.q - 1, y.q) : y.q;
}

// Writes m as a sum of the available powers 2^j, j < rho, largest first
// (repetitions allowed once m exceeds 2^(rho-1)).
void append_power_atoms(const GeneratingSet& y, int i, int m,
                        std::vector<GenAtom>& out) {
    while (m > 0) {
        int e = 1;
        while (2 * e <= m && 2 * e <= (1 << (y.rho - 1)))
            e *= 2;
        out.push_back({GenAtom::Kind::IPow, i, e});
        m -= e;
    }
}

// Conjugator for T^(k) as a list of (register, exponent) power blocks,
// applied left to right.
std::vector<std::pair<int, int>> conjugator_blocks(const GeneratingSet& y,
                                                   const State& k) {
    std::vector<std::pair<int, int>> blocks;
    if (k.digits[0] != 0) {
        if (k.digits[0] > 1)
            blocks.emplace_back(1, k.digits[0] - 1);
        for (int j = 2; j <= y.n; ++j)
            if (k.digits[static_cast<size_t>(j - 1)] != 0)
                blocks.emplace_back(j, k.digits[static_cast<size_t>(j - 1)]);
    } else {
        for (int j = 2; j <= y.n; ++j)
            if (k.digits[static_cast<size_t>(j - 1)] != 0)
                blocks.emplace_back(j, k.digits[static_cast<size_t>(j - 1)]);
        blocks.emplace_back(1, y.q - 1);
    }
    return blocks;
}

// T^(k) = g^{-1} T^(1) g with g the block conjugator above.
void append_transposition_atoms(const GeneratingSet& y, const State& k,
                                std::vector<GenAtom>& out) {
    auto blocks = conjugator_blocks(y, k);
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it)
        append_power_atoms(y, it->first, cycle_order(y, it->first) - it->second, out);
    out.push_back({GenAtom::Kind::T1, 1, 1});
    for (const auto& [reg, exp] : blocks)
        append_power_atoms(y, reg, exp, out);
}

Program atoms_to_program(const GeneratingSet& y, const std::vector<GenAtom>& atoms) {
    Program p;
    for (const auto& a : atoms)
        p.append(y.atom_instruction(a));
    return p.fused();
}

// Chain of T^(k) factors and A^(2) steps; adjacent equal T factors cancel.
constexpr long long kAssign = -1;

class FactorChain {
public:
    void push_t(StateIndex k) {
        if (!items_.empty() && items_.back() == static_cast<long long>(k))
            items_.pop_back();
        else
            items_.push_back(static_cast<long long>(k));
    }

    // (u, v) as a product of T factors, picking whichever of the two
    // three-term forms cancels against the current tail.
    void push_transposition(StateIndex u, StateIndex v) {
        if (u == v)
            throw degenerate_input_error("transposition with equal states");
        if (u == 0) {
            push_t(v);
            return;
        }
        if (v == 0) {
            push_t(u);
            return;
        }
        if (!items_.empty() && items_.back() == static_cast<long long>(u)) {
            push_t(u);
            push_t(v);
            push_t(u);
        } else {
            push_t(v);
            push_t(u);
            push_t(v);
        }
    }

    void push_assign() { items_.push_back(kAssign); }

    const std::vector<long long>& items() const { return items_; }

    // Extensional value of the chain, for cross-checking the synthesis.
    Transformation as_transformation(int n, int q) const {
        StateIndex size = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(n));
        std::vector<std::uint32_t> tab(size);
        std::iota(tab.begin(), tab.end(), 0u);
        for (long long item : items_) {
            if (item == kAssign) {
                for (auto& v : tab)
                    if (v == 0)
                        v = static_cast<std::uint32_t>(q);
            } else {
                auto k = static_cast<std::uint32_t>(item);
                for (auto& v : tab) {
                    if (v == 0)
                        v = k;
                    else if (v == k)
                        v = 0;
                }
            }
        }
        return Transformation(n, q, std::move(tab));
    }

private:
    std::vector<long long> items_;
};

void append_chain_atoms(const GeneratingSet& y, const FactorChain& chain,
                        std::vector<GenAtom>& atoms, BoundTerms& bt) {
    for (long long item : chain.items()) {
        if (item == kAssign) {
            atoms.push_back({GenAtom::Kind::A2, 2, 1});
            bt.assignment_count += 1;
        } else {
            State k = state_of_index(static_cast<StateIndex>(item), y.n, y.q);
            append_transposition_atoms(y, k, atoms);
            bt.transposition_count += 1;
            bt.total_weight += static_cast<size_t>(weight(k));
        }
    }
}

SynthesisReport finish_report(const GeneratingSet& y, std::vector<GenAtom> atoms,
                              BoundTerms bt) {
    SynthesisReport rep;
    bt.raw_length = atoms.size();
    rep.generators = std::move(atoms);
    rep.program = atoms_to_program(y, rep.generators);
    rep.length = rep.program.length();
    rep.bound_terms = bt;
    return rep;
}

}  // namespace

Instruction GeneratingSet::atom_instruction(const GenAtom& atom) const {
    switch (atom.kind) {
        case GenAtom::Kind::T1:
            return t1;
        case GenAtom::Kind::A2:
            return a2;
        case GenAtom::Kind::IPow: {
            if (atom.reg < 1 || atom.reg > n)
                throw range_error("generator register out of range");
            int j = 0;
            while ((1 << j) < atom.exp)
                ++j;
            if ((1 << j) != atom.exp || j >= rho)
                throw range_error("generator exponent is not an admissible power of two");
            return i_pow[static_cast<size_t>(atom.reg - 1)][static_cast<size_t>(j)];
        }
    }
    throw range_error("unknown generator atom");
}

std::vector<Instruction> GeneratingSet::instructions() const {
    std::vector<Instruction> all{t1, a2};
    for (const auto& regs : i_pow)
        all.insert(all.end(), regs.begin(), regs.end());
    return all;
}

GeneratingSet generating_set(int q, int n) {
    if (q < 2)
        throw shape_error("alphabet must have at least two symbols");
    if (n < 2)
        throw shape_error("generating set needs at least two registers");

    GeneratingSet y;
    y.n = n;
    y.q = q;
    y.rho = 1;
    while ((1 << y.rho) < q)
        ++y.rho;

    StateIndex size = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(n));

    std::vector<Symbol> t1(size), a2(size);
    for (StateIndex j = 0; j < size; ++j) {
        t1[j] = digit_of(j, 1, q);
        a2[j] = digit_of(j, 2, q);
    }
    t1[0] = 1;
    t1[1] = 0;
    a2[0] = 1;
    y.t1 = Instruction(n, q, 1, std::move(t1));
    y.a2 = Instruction(n, q, 2, std::move(a2));

    y.i_pow.resize(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        std::vector<Symbol> coord(size);
        StateIndex w = reg_weight(i, q);
        for (StateIndex j = 0; j < size; ++j) {
            int x = digit_of(j, i, q);
            int shift = 1;
            if (i == 1) {
                if (j == 0)
                    shift -= 1;
                else if (j == static_cast<StateIndex>(q - 1))
                    shift += 1;
            } else {
                // states lambda*e^i are exactly the multiples of w below q*w
                if (j == static_cast<StateIndex>(x) * w)
                    shift -= 1;
            }
            coord[j] = ((x + shift) % q + q) % q;
        }
        Instruction base(n, q, i, std::move(coord));
        auto& powers = y.i_pow[static_cast<size_t>(i - 1)];
        powers.push_back(base);
        Transformation acc = base.as_transformation();
        for (int j = 1; j < y.rho; ++j) {
            acc = compose(acc, acc);
            powers.push_back(induced_instruction(acc, i));
        }
    }
    return y;
}

int weight(const State& k) {
    return static_cast<int>(std::count_if(k.digits.begin(), k.digits.end(),
                                          [](Symbol d) { return d != 0; }));
}

std::vector<GenAtom> power_atoms(const GeneratingSet& y, int i, int lambda) {
    if (i < 1 || i > y.n)
        throw range_error("register out of range");
    if (lambda < 1 || lambda > y.q - 1)
        throw range_error("exponent out of range");
    std::vector<GenAtom> out;
    append_power_atoms(y, i, lambda, out);
    return out;
}

Program power_program(const GeneratingSet& y, int i, int lambda) {
    return atoms_to_program(y, power_atoms(y, i, lambda));
}

SynthesisReport transposition_program(const GeneratingSet& y, const State& k) {
    check_registers(y, k.n, k.q);
    check_state(k);
    if (lex_index(k) == 0)
        throw degenerate_input_error("transposition with the zero state");
    std::vector<GenAtom> atoms;
    append_transposition_atoms(y, k, atoms);
    BoundTerms bt;
    bt.transposition_count = 1;
    bt.total_weight = static_cast<size_t>(weight(k));
    return finish_report(y, std::move(atoms), bt);
}

SynthesisReport permutation_program(const GeneratingSet& y, const Transformation& pi) {
    check_registers(y, pi.n(), pi.q());
    if (!pi.is_permutation())
        throw not_invertible_error("not a permutation");

    FactorChain chain;
    for (const auto& cyc : cycle_decomposition(pi))
        for (size_t t = cyc.size() - 1; t >= 1; --t)
            chain.push_transposition(cyc[t - 1], cyc[t]);

    std::vector<GenAtom> atoms;
    BoundTerms bt;
    append_chain_atoms(y, chain, atoms, bt);
    return finish_report(y, std::move(atoms), bt);
}

SynthesisReport transformation_program(const GeneratingSet& y, const Transformation& g) {
    check_registers(y, g.n(), g.q());
    if (g.is_permutation())
        return permutation_program(y, g);

    auto classes = kernel_partition(g);
    const auto qidx = static_cast<std::uint32_t>(y.q);

    // order classes so that the class of state 0 is first, and (when 0 and q
    // fall in different classes) the class of state q is last with q as its
    // final element
    size_t class_of_q = 0;
    for (size_t c = 0; c < classes.size(); ++c)
        if (std::find(classes[c].begin(), classes[c].end(), qidx) != classes[c].end())
            class_of_q = c;
    bool same_class = class_of_q == 0;

    FactorChain chain;
    if (same_class) {
        // Case 1: lead with 0 and q, merge the rest of the class, then sweep
        // each later class through q
        std::vector<std::uint32_t> first;
        first.push_back(0);
        first.push_back(qidx);
        for (auto v : classes[0])
            if (v != 0 && v != qidx)
                first.push_back(v);

        chain.push_assign();
        for (size_t t = 2; t < first.size(); ++t) {
            chain.push_t(first[t]);
            chain.push_assign();
        }
        for (size_t c = 1; c < classes.size(); ++c) {
            chain.push_transposition(qidx, classes[c][0]);
            for (size_t t = 1; t < classes[c].size(); ++t) {
                chain.push_t(classes[c][t]);
                chain.push_assign();
            }
        }
    } else {
        // Case 2: store q away with the opening transposition, run the Case 1
        // sweep over the remaining classes, and close with an assignment that
        // merges q back into its own class
        std::vector<std::vector<std::uint32_t>> order;
        order.push_back(classes[0]);
        for (size_t c = 1; c < classes.size(); ++c)
            if (c != class_of_q)
                order.push_back(classes[c]);
        std::vector<std::uint32_t> last;
        for (auto v : classes[class_of_q])
            if (v != qidx)
                last.push_back(v);
        last.push_back(qidx);
        order.push_back(std::move(last));

        chain.push_transposition(0, qidx);
        for (size_t t = 1; t < order[0].size(); ++t) {
            chain.push_t(order[0][t]);
            chain.push_assign();
        }
        for (size_t c = 1; c + 1 < order.size(); ++c) {
            chain.push_transposition(qidx, order[c][0]);
            for (size_t t = 1; t < order[c].size(); ++t) {
                chain.push_t(order[c][t]);
                chain.push_assign();
            }
        }
        // q is parked at the argument of the first plain T factor, or at
        // state 0 if every merged element precedes it
        std::uint32_t park = 0;
        for (size_t c = 0; c + 1 < order.size(); ++c)
            if (order[c].size() >= 2) {
                park = order[c][1];
                break;
            }
        const auto& final_class = order.back();
        if (final_class.size() >= 2) {
            if (park == 0 && final_class.size() >= 3)
                park = final_class[1];
            chain.push_transposition(qidx, final_class[0]);
            for (size_t t = 1; t + 1 < final_class.size(); ++t) {
                chain.push_t(final_class[t]);
                chain.push_assign();
            }
            // merge the parked q with the rest of its class
            if (park == 0) {
                chain.push_assign();
            } else {
                chain.push_t(park);
                chain.push_assign();
                chain.push_t(park);
            }
        }
        // a singleton {q} needs no sweep and no merge: the class counts
        // already balance and q keeps its parked image
    }

    Transformation h = chain.as_transformation(y.n, y.q);
    if (kernel_partition(h) != classes)
        throw error("kernel chain synthesis failed");

    // g = h * pi: send each class image under h to its image under g, then
    // complete the partial bijection lexicographically
    StateIndex size = g.domain_size();
    std::vector<std::uint32_t> pi_tab(size, UINT32_MAX);
    std::vector<bool> used(size, false);
    for (const auto& cls : classes) {
        std::uint32_t from = h.apply_index(cls[0]);
        std::uint32_t to = g.apply_index(cls[0]);
        pi_tab[from] = to;
        used[to] = true;
    }
    std::uint32_t next = 0;
    for (StateIndex j = 0; j < size; ++j) {
        if (pi_tab[j] != UINT32_MAX)
            continue;
        while (used[next])
            ++next;
        pi_tab[j] = next;
        used[next] = true;
    }
    Transformation pi(y.n, y.q, std::move(pi_tab));
    if (compose(h, pi) != g)
        throw error("kernel chain synthesis failed");

    std::vector<GenAtom> atoms;
    BoundTerms bt;
    append_chain_atoms(y, chain, atoms, bt);
    bt.kernel_chain = chain.items().size();

    SynthesisReport perm = permutation_program(y, pi);
    atoms.insert(atoms.end(), perm.generators.begin(), perm.generators.end());
    bt.transposition_count += perm.bound_terms.transposition_count;
    bt.total_weight += perm.bound_terms.total_weight;
    return finish_report(y, std::move(atoms), bt);
}

Program swap_program(int q) {
    if (q < 2)
        throw shape_error("alphabet must have at least two symbols");
    StateIndex size = static_cast<StateIndex>(q) * static_cast<StateIndex>(q);
    std::vector<Symbol> add(size), sub(size);
    for (StateIndex j = 0; j < size; ++j) {
        int x1 = static_cast<int>(j % static_cast<StateIndex>(q));
        int x2 = static_cast<int>(j / static_cast<StateIndex>(q));
        add[j] = (x1 + x2) % q;
        sub[j] = ((x1 - x2) % q + q) % q;
    }
    Program p;
    p.append(Instruction(2, q, 1, add));
    p.append(Instruction(2, q, 2, sub));
    p.append(Instruction(2, q, 1, sub));
    return p;
}

ComplexityResult exact_complexity(const Transformation& g,
                                  const std::vector<Instruction>& generators,
                                  size_t budget) {
    std::vector<Transformation> gens;
    for (const auto& ins : generators) {
        if (ins.n != g.n() || ins.q != g.q())
            throw shape_error("generator shape mismatch");
        gens.push_back(ins.as_transformation());
    }

    Transformation id = Transformation::identity(g.n(), g.q());
    if (g == id)
        return {0, false};

    std::map<std::vector<std::uint32_t>, size_t> dist;
    std::deque<Transformation> frontier;
    dist[id.table()] = 0;
    frontier.push_back(id);

    while (!frontier.empty()) {
        Transformation f = std::move(frontier.front());
        frontier.pop_front();
        size_t d = dist[f.table()];
        for (const auto& gen : gens) {
            Transformation h = compose(f, gen);
            auto [it, fresh] = dist.emplace(h.table(), d + 1);
            if (!fresh)
                continue;
            if (h == g)
                return {d + 1, false};
            if (dist.size() > budget)
                return {std::nullopt, false};
            frontier.push_back(std::move(h));
        }
    }
    return {std::nullopt, true};
}

}  // namespace mlcomp
