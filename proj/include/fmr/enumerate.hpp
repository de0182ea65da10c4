#pragma once

#include <map>

#include "fmr/constructions.hpp"

namespace fmr {

/// One enumeration/sampling run driving the criterion-vs-definition and
/// essentiality equivalence suites.
struct EnumerationJob {
    enum class Mode { Exhaustive, Random };
    Mode mode = Mode::Exhaustive;
    int order = 2;          // exhaustive supports order 2; random builds order-3 samples
    int max_bimodule = 4;   // off-diagonal carrier bound (exhaustive)
    std::vector<std::string> menu = {"GF(2)", "Z/4", "trivext(GF(2))"};
    uint64_t seed = 1;
    int count = 500;        // random mode
    bool check_equivalence = true;   // criterion <=> definition, all permutations
    bool check_essential = true;     // essential criterion <=> direct essentiality
    bool check_lemmas = true;        // row socle formula, radical containment
};

struct Discrepancy {
    std::string kind;
    std::string detail;
    std::string spec_text;  // reproducer
};

struct Census {
    long long rings_built = 0;
    long long rings_checked = 0;
    long long duplicates = 0;
    long long nonbasic = 0;
    long long with_nakayama = 0;
    std::map<std::string, long long> classifications;
    std::vector<Discrepancy> discrepancies;
    uint64_t seed = 0;
};

Census run_enumeration(const EnumerationJob& job);

/// The check bundle applied to one ring; appends discrepancies.  Exposed so
/// test fixtures can run the same suite on hand-built rings.
void run_suites_on_ring(const FormalRingPtr& ring, const EnumerationJob& job, Census& census);

}  // namespace fmr
