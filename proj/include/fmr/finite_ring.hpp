#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fmr/common.hpp"

namespace fmr {

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

/// A unital associative ring on a dense finite carrier 0..size-1, given by
/// full addition/multiplication lookup tables.  Immutable after validation;
/// every operation downstream assumes the axioms hold.
class FiniteRing {
  public:
    /// Validates all ring axioms and returns the ring.  Associativity and
    /// distributivity are checked exhaustively up to Limits::law_exhaustive_bound
    /// and by seeded random sampling beyond it.  Throws AxiomViolation.
    static RingPtr make(int size, std::vector<Elem> add, std::vector<Elem> mul, Elem zero,
                        Elem one, std::vector<std::string> labels = {}, std::string name = "");

    int size() const { return size_; }
    Elem add(Elem a, Elem b) const { return add_[static_cast<size_t>(a) * size_ + b]; }
    Elem mul(Elem a, Elem b) const { return mul_[static_cast<size_t>(a) * size_ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem zero() const { return zero_; }
    Elem one() const { return one_; }
    bool is_zero_ring() const { return size_ == 1; }

    bool is_unit(Elem a) const { return unit_mask_[a] != 0; }
    const std::vector<Elem>& units() const { return units_; }
    /// J(R) = { x : 1 - r*x is a unit for all r }, verified to be a two-sided ideal.
    const std::vector<Elem>& jacobson_radical() const { return radical_; }
    bool in_radical(Elem a) const { return radical_mask_[a] != 0; }
    /// True iff the non-units form an additive subgroup (equivalently J(R)).
    bool is_local() const { return local_; }

    /// Additive order of an element.
    int add_order(Elem a) const;
    /// Exponent of the additive group (lcm of additive orders).
    int add_exponent() const;

    const std::string& label(Elem a) const;
    const std::string& name() const { return name_; }

    const std::vector<Elem>& add_table() const { return add_; }
    const std::vector<Elem>& mul_table() const { return mul_; }

    uint64_t content_hash() const { return hash_; }
    bool tables_equal(const FiniteRing& other) const;

  private:
    FiniteRing() = default;

    int size_ = 0;
    std::vector<Elem> add_, mul_, neg_;
    Elem zero_ = 0, one_ = 0;
    std::vector<char> unit_mask_, radical_mask_;
    std::vector<Elem> units_, radical_;
    bool local_ = false;
    std::vector<std::string> labels_;
    std::string name_;
    uint64_t hash_ = 0;
};

struct ResidueField {
    RingPtr field;              // R / J(R), verified to be a skew field
    std::vector<Elem> proj;     // canonical projection R -> field, elementwise
    std::vector<Elem> section;  // one preimage per field element (least index)
};

/// Residue skew field of a local ring; nullopt when the ring is not local.
std::optional<ResidueField> local_residue(const RingPtr& ring);

/// Explicit ring isomorphism search (backtracking over additive generators).
/// Returns the image table A -> B or nullopt.
std::optional<std::vector<Elem>> ring_isomorphism(const FiniteRing& a, const FiniteRing& b);

/// All ring automorphisms of a small ring, in lexicographic image order.
std::vector<std::vector<Elem>> ring_automorphisms(const FiniteRing& r);

}  // namespace fmr
