#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mlcomp/transformation.hpp"

namespace mlcomp {

// Update rule for one register of a machine: eval computes the new symbol of
// the register from the full current state (0-based vector of m symbols).
// window lists the registers (1-based) the rule may read; kind is a short
// descriptive tag for descriptor files and diagnostics.
struct CoordRule {
    std::string kind;
    std::vector<int> window;
    std::function<Symbol(const std::vector<Symbol>&)> eval;
};

// A machine over A^m whose first n registers carry the simulated state.
// rules[i] updates register i+1; layout names the register groups; params
// records the construction's derived quantities (Q, rho, sigma, r, K, ...).
struct UniversalMachine {
    std::string kind;
    int q = 2;
    int n = 0;
    int m = 0;
    std::vector<CoordRule> rules;
    std::map<std::string, std::vector<int>> layout;
    std::map<std::string, long long> params;

    // Catalogs for the kinds that take one, flattened row-major; empty
    // otherwise.  Kept for descriptor round-trips.
    std::vector<Transformation> catalog;
};

void check_machine(const UniversalMachine& mc);

// Text descriptor: header line, param lines, layout lines, catalog tables.
std::string machine_to_text(const UniversalMachine& mc);

// Rebuilds the machine named by a descriptor (rules are reconstructed from
// kind, q, n and the catalog, then cross-checked against the header).
UniversalMachine parse_machine_text(const std::string& text);

}  // namespace mlcomp
