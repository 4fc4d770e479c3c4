#include "mlcomp/machine.hpp"

#include <algorithm>
#include <sstream>

#include "mlcomp/machines.hpp"
#include "mlcomp/types.hpp"

namespace mlcomp {

void check_machine(const UniversalMachine& mc) {
    if (mc.q < 2) throw range_error("machine alphabet must have q >= 2");
    if (mc.n < 1 || mc.m < mc.n) throw shape_error("machine needs m >= n >= 1");
    if (static_cast<int>(mc.rules.size()) != mc.m)
        throw shape_error("machine must define one rule per register");
    for (int i = 0; i < mc.m; ++i) {
        for (int r : mc.rules[i].window)
            if (r < 1 || r > mc.m)
                throw range_error("rule window leaves the register range");
        if (!mc.rules[i].eval) throw shape_error("rule without an update function");
    }
}

std::string machine_to_text(const UniversalMachine& mc) {
    std::ostringstream out;
    out << "machine kind=" << mc.kind << " q=" << mc.q << " n=" << mc.n
        << " m=" << mc.m << "\n";
    for (const auto& [name, value] : mc.params)
        out << "param " << name << "=" << value << "\n";
    for (const auto& [name, regs] : mc.layout) {
        out << "layout " << name;
        for (int r : regs) out << ' ' << r;
        out << "\n";
    }
    for (const Transformation& f : mc.catalog) {
        out << "catalog :";
        for (std::uint32_t v : f.table()) out << ' ' << v;
        out << "\n";
    }
    return out.str();
}

namespace {

// "key=value" -> value, or throw.
std::string field(const std::string& token, const std::string& key, int line) {
    const std::string prefix = key + "=";
    if (token.rfind(prefix, 0) != 0)
        throw parse_error("expected " + key + "=...", line);
    return token.substr(prefix.size());
}

}  // namespace

UniversalMachine parse_machine_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    std::string kind;
    int q = 0, n = 0, m = 0;
    bool seen_header = false;
    std::vector<Transformation> catalog;

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "machine") {
            std::string tk, tq, tn, tm;
            if (!(ls >> tk >> tq >> tn >> tm))
                throw parse_error("malformed machine header", lineno);
            kind = field(tk, "kind", lineno);
            q = std::stoi(field(tq, "q", lineno));
            n = std::stoi(field(tn, "n", lineno));
            m = std::stoi(field(tm, "m", lineno));
            seen_header = true;
        } else if (tag == "param" || tag == "layout") {
            // informative only; reconstructed by the builder
        } else if (tag == "catalog") {
            if (!seen_header) throw parse_error("catalog before machine header", lineno);
            std::string colon;
            ls >> colon;
            if (colon != ":") throw parse_error("expected 'catalog :'", lineno);
            std::vector<std::uint32_t> table;
            long long v;
            while (ls >> v) table.push_back(static_cast<std::uint32_t>(v));
            if (table.size() != pow_u64(q, static_cast<unsigned>(n)))
                throw parse_error("catalog table has wrong width", lineno);
            catalog.emplace_back(n, q, std::move(table));
        } else {
            throw parse_error("unknown line '" + tag + "'", lineno);
        }
    }
    if (!seen_header) throw parse_error("missing machine header", 1);

    UniversalMachine mc = build_machine(kind, q, n, catalog);
    if (mc.m != m)
        throw parse_error("descriptor claims m=" + std::to_string(m) +
                              " but construction yields m=" + std::to_string(mc.m),
                          1);
    return mc;
}

}  // namespace mlcomp
