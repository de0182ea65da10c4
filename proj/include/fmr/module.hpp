#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fmr/finite_ring.hpp"

namespace fmr {

/// A finite one-sided module: abelian group plus a unital ring action on the
/// declared side.  act(m, r) means m*r for right modules and r*m for left ones.
class FiniteModule {
  public:
    static FiniteModule make(RingPtr ring, Side side, int size, std::vector<Elem> add,
                             std::vector<Elem> act);
    /// The ring over itself (right or left regular module).
    static FiniteModule regular(RingPtr ring, Side side);
    /// The zero module (size-1 carrier).
    static FiniteModule zero(RingPtr ring, Side side);

    const RingPtr& ring() const { return ring_; }
    Side side() const { return side_; }
    int size() const { return size_; }
    Elem add(Elem a, Elem b) const { return add_[static_cast<size_t>(a) * size_ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem act(Elem m, Elem r) const { return act_[static_cast<size_t>(m) * ring_->size() + r]; }
    Elem zero_elem() const { return zero_; }
    bool is_zero() const { return size_ == 1; }

    int add_order(Elem a) const;
    int add_exponent() const;

    const std::vector<Elem>& add_table() const { return add_; }
    const std::vector<Elem>& act_table() const { return act_; }

  private:
    RingPtr ring_;
    Side side_ = Side::Right;
    int size_ = 0;
    Elem zero_ = 0;
    std::vector<Elem> add_, neg_, act_;
};

class FiniteBimodule;
using BimodulePtr = std::shared_ptr<const FiniteBimodule>;

/// A finite abelian group with commuting unital left/right ring actions.
/// The zero bimodule is represented by a size-1 carrier.
class FiniteBimodule {
  public:
    static BimodulePtr make(RingPtr left, RingPtr right, int size, std::vector<Elem> add,
                            std::vector<Elem> left_action, std::vector<Elem> right_action);
    static BimodulePtr zero(RingPtr left, RingPtr right);
    /// R as an R-R-bimodule over itself.
    static BimodulePtr regular(RingPtr ring);
    /// Same carrier, actions precomposed with ring automorphisms (identity when empty).
    static BimodulePtr twisted(const BimodulePtr& base, const std::vector<Elem>& left_auto,
                               const std::vector<Elem>& right_auto);

    const RingPtr& left_ring() const { return left_; }
    const RingPtr& right_ring() const { return right_; }
    int size() const { return size_; }
    Elem add(Elem a, Elem b) const { return add_[static_cast<size_t>(a) * size_ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem lact(Elem r, Elem m) const { return lact_[static_cast<size_t>(r) * size_ + m]; }
    Elem ract(Elem m, Elem r) const { return ract_[static_cast<size_t>(m) * right_->size() + r]; }
    Elem zero_elem() const { return zero_; }
    bool is_zero() const { return size_ == 1; }

    FiniteModule right_module() const;
    FiniteModule left_module() const;

    const std::vector<Elem>& add_table() const { return add_; }
    uint64_t content_hash() const { return hash_; }
    bool tables_equal(const FiniteBimodule& other) const;

  private:
    RingPtr left_, right_;
    int size_ = 0;
    Elem zero_ = 0;
    std::vector<Elem> add_, neg_, lact_, ract_;
    uint64_t hash_ = 0;
};

/// A subset of a module carrier known to be closed under addition and the
/// declared action(s); stores both the sorted element list and a mask.
struct SubmoduleSet {
    std::vector<Elem> elems;
    std::vector<char> mask;
    Side side = Side::Right;

    static SubmoduleSet of(std::vector<Elem> elements, int ambient_size, Side side);
    bool contains(Elem x) const { return mask[x] != 0; }
    int size() const { return static_cast<int>(elems.size()); }
    bool is_zero(Elem zero_elem) const { return size() == 1 && elems[0] == zero_elem; }
    bool operator==(const SubmoduleSet& o) const { return elems == o.elems; }
};

/// An additive, action-compatible map between modules, stored elementwise.
struct ModuleMap {
    int source_size = 0;
    int target_size = 0;
    std::vector<Elem> images;
    Side side = Side::Right;
};

/// Additive closure of a set of generators inside a module, then closed under
/// the module action.
SubmoduleSet submodule_closure(const FiniteModule& m, std::span<const Elem> gens);

/// Additive subgroup closure only (no action).
std::vector<Elem> additive_closure(const FiniteModule& m, std::span<const Elem> gens);

/// The cyclic submodule xR (or Rx) as a plain sorted element set.
std::vector<Elem> cyclic_submodule(const FiniteModule& m, Elem x);

}  // namespace fmr
