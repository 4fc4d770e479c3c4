#include "mlcomp/text_io.hpp"

#include <fstream>
#include <sstream>

namespace mlcomp {

namespace {

// Parses "<name> n=<n> q=<q>".
void parse_header(const std::string& line, const std::string& name, int& n, int& q, int lineno) {
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    if (word != name)
        throw parse_error("expected '" + name + "' header", lineno);
    n = q = -1;
    while (ss >> word) {
        if (word.rfind("n=", 0) == 0)
            n = std::stoi(word.substr(2));
        else if (word.rfind("q=", 0) == 0)
            q = std::stoi(word.substr(2));
        else
            throw parse_error("unexpected header field '" + word + "'", lineno);
    }
    if (n < 1 || q < 2)
        throw parse_error("header needs n>=1 and q>=2", lineno);
}

}  // namespace

std::string to_text(const Transformation& f) {
    std::ostringstream out;
    out << "transform n=" << f.n() << " q=" << f.q() << "\n";
    for (StateIndex j = 0; j < f.domain_size(); ++j) {
        State img = state_of_index(f.apply_index(static_cast<std::uint32_t>(j)), f.n(), f.q());
        for (int i = 0; i < f.n(); ++i)
            out << (i ? " " : "") << img.digits[static_cast<size_t>(i)];
        out << "\n";
    }
    return out.str();
}

std::string to_text(const Program& p, int n, int q) {
    std::ostringstream out;
    out << "program n=" << n << " q=" << q << "\n";
    for (const auto& ins : p.steps) {
        out << ins.target << " :";
        for (Symbol v : ins.coord)
            out << " " << v;
        out << "\n";
    }
    return out.str();
}

Transformation parse_transformation(std::istream& in) {
    std::string line;
    int lineno = 1;
    if (!std::getline(in, line))
        throw parse_error("empty input", lineno);
    int n, q;
    parse_header(line, "transform", n, q, lineno);
    StateIndex size = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(n));
    std::vector<std::uint32_t> table;
    table.reserve(size);
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream ss(line);
        State img(n, q);
        for (int i = 0; i < n; ++i) {
            if (!(ss >> img.digits[static_cast<size_t>(i)]))
                throw parse_error("expected " + std::to_string(n) + " digits", lineno);
            if (img.digits[static_cast<size_t>(i)] < 0 || img.digits[static_cast<size_t>(i)] >= q)
                throw parse_error("digit out of range", lineno);
        }
        std::string extra;
        if (ss >> extra)
            throw parse_error("trailing content after " + std::to_string(n) + " digits", lineno);
        table.push_back(static_cast<std::uint32_t>(lex_index(img)));
    }
    if (table.size() != size)
        throw parse_error("expected q^n = " + std::to_string(size) + " image lines, got " +
                              std::to_string(table.size()),
                          lineno);
    return Transformation(n, q, std::move(table));
}

Transformation parse_transformation_text(const std::string& text) {
    std::istringstream in(text);
    return parse_transformation(in);
}

Program parse_program(std::istream& in, int* n_out, int* q_out) {
    std::string line;
    int lineno = 1;
    if (!std::getline(in, line))
        throw parse_error("empty input", lineno);
    int n, q;
    parse_header(line, "program", n, q, lineno);
    StateIndex size = pow_u64(static_cast<StateIndex>(q), static_cast<unsigned>(n));
    Program p;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream ss(line);
        int target;
        std::string colon;
        if (!(ss >> target >> colon) || colon != ":")
            throw parse_error("expected '<target> : <symbols>'", lineno);
        std::vector<Symbol> coord;
        coord.reserve(size);
        Symbol v;
        while (ss >> v)
            coord.push_back(v);
        if (coord.size() != size)
            throw parse_error("expected q^n = " + std::to_string(size) + " symbols", lineno);
        try {
            p.append(Instruction(n, q, target, std::move(coord)));
        } catch (const error& e) {
            throw parse_error(e.what(), lineno);
        }
    }
    if (n_out)
        *n_out = n;
    if (q_out)
        *q_out = q;
    return p;
}

Program parse_program_text(const std::string& text, int* n_out, int* q_out) {
    std::istringstream in(text);
    return parse_program(in, n_out, q_out);
}

Transformation load_transformation(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw error("cannot open " + path);
    return parse_transformation(in);
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw error("cannot open " + path + " for writing");
    out << text;
}

}  // namespace mlcomp
