#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mlcomp/machine.hpp"
#include "mlcomp/schedule.hpp"
#include "mlcomp/transformation.hpp"

namespace mlcomp {

struct VerifyOptions {
    bool exhaustive = true;          // refuse above budget rather than sample
    std::uint64_t samples = 10000;   // when exhaustive == false
    std::uint64_t seed = 0x6d6c636f;
    std::uint64_t budget = 1ull << 21;
    int jobs = 1;
    std::size_t max_failures = 8;    // counterexamples kept in the report
};

struct VerificationReport {
    std::string what;
    bool exhaustive = true;
    std::uint64_t samples = 0;       // 0 in exhaustive mode
    std::uint64_t seed = 0;
    std::uint64_t checked = 0;
    std::size_t schedule_length = 0;

    struct Failure {
        std::vector<Symbol> initial;  // initial state digits
        std::size_t at = 0;           // failing boundary id, or ~0 for the end check
    };
    std::vector<Failure> failures;

    bool pass() const { return failures.empty(); }
    std::string summary() const;  // plain-text key: value block
    std::string json() const;
};

// pr . g == h . pr over initial states of A^m (the end of the schedule).
VerificationReport verify_simulation(const UniversalMachine& mc, const Schedule& sched,
                                     const Transformation& g,
                                     const VerifyOptions& opt = {});

// Sequential simulation: at boundary i the first n registers must equal
// g^(i) applied to the original input's projection.  Targets must align with
// the schedule's boundaries; pass an empty list to use the boundaries'
// embedded expectations.
VerificationReport verify_sequential(const UniversalMachine& mc, const Schedule& sched,
                                     const std::vector<Transformation>& targets,
                                     const VerifyOptions& opt = {});

struct MonoidClosure {
    std::vector<Transformation> elements;  // breadth-first order
    std::vector<std::size_t> lengths;      // word length per element
    bool complete = false;                 // fixpoint reached under the cap
};

// Smallest subsemigroup containing the generators (words of length >= 1).
MonoidClosure generated_monoid(const std::vector<Transformation>& generators,
                               std::size_t cap);

// Machine-checked instance of the no-n-size-universality theorem: no
// instruction tuple generates all singular transformations of A^n.
VerificationReport theorem1_check(int q, int n);

// Smallest k <= max_k with f^k . pr == pr . g; nullopt is definitive when
// the forward orbit of f closes before max_k.
std::optional<std::uint64_t> parallel_simulation_search(const Transformation& f,
                                                        const Transformation& g,
                                                        std::uint64_t max_k);

// The q^n rank-2 stress transformations g^(k): x -> 1 iff x = k, else 0.
std::vector<Transformation> witness_sequence(int q, int n);

}  // namespace mlcomp
