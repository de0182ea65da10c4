#pragma once

#include <map>
#include <optional>
#include <string>

#include "fmr/formal_matrix.hpp"

namespace fmr {

/// One slot of a ring spec document: a named generator or an explicit table
/// block, with the source line for diagnostics.
struct SlotDef {
    std::string named;  // empty when a table block is given
    std::map<std::string, std::vector<long long>> table;  // section -> integers
    int twist = 0;
    int line = 0;
    bool defined = false;
};

/// Parsed declarative ring-spec document.  Structural completeness (every
/// slot defined, possibly via the default directives) is enforced at parse
/// time; name resolution happens in build_from_document.
struct RingSpecDocument {
    int format_version = 1;
    int order = 0;
    std::vector<SlotDef> rings;      // n entries
    std::vector<SlotDef> bimodules;  // n*n, diagonal ignored
    std::vector<SlotDef> products;   // n*n*n, only proper triples used

    SlotDef& ring(int i) { return rings[i]; }
    SlotDef& bimodule(int i, int j) { return bimodules[static_cast<size_t>(i) * order + j]; }
    SlotDef& product(int i, int j, int k) {
        return products[(static_cast<size_t>(i) * order + j) * order + k];
    }
};

/// Parse the text format; rejects incomplete documents with positioned
/// diagnostics.  Throws ParseError.
RingSpecDocument parse_spec(const std::string& text);

/// Resolve names and build the ring (eager validation).  Throws
/// UnresolvedReference, plus anything FormalMatrixRing::build throws.
FormalRingPtr build_from_document(const RingSpecDocument& doc);

/// Canonical explicit-table emission; parse(emit(r)) rebuilds a
/// table-identical ring.
std::string emit_spec(const FormalRingPtr& ring);

/// Content hash of the canonical emission (stable across runs).
std::string spec_hash(const FormalRingPtr& ring);

}  // namespace fmr
