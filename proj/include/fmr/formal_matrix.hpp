#pragma once

#include <memory>
#include <vector>

#include "fmr/algebra.hpp"
#include "fmr/module.hpp"

namespace fmr {

class FormalMatrixRing;
using FormalRingPtr = std::shared_ptr<const FormalMatrixRing>;

/// An element of a formal matrix ring: one carrier index per (i, j) cell.
/// The full ring is never materialized for arithmetic.
struct MatrixElement {
    const FormalMatrixRing* parent = nullptr;
    std::vector<Elem> entries;  // n*n, row-major

    Elem at(int i, int j) const;
    Elem& at(int i, int j);
    bool operator==(const MatrixElement& o) const { return entries == o.entries; }
};

/// A formal matrix ring of order n: local rings on the diagonal, coordinate
/// bimodules off it, and product homomorphism tables satisfying the
/// associativity condition.  Immutable after build().
class FormalMatrixRing {
  public:
    struct Spec {
        std::vector<RingPtr> diagonal;
        // n*n bimodules; the diagonal slots may be left null (the regular
        // bimodule is filled in automatically).
        std::vector<BimodulePtr> bimodules;
        // Proper product tables keyed by (i,j,k) with i != j and j != k:
        // flattened |B_ij| x |B_jk| -> B_ik.  Missing tables default to zero
        // maps.  Tables with i == j or j == k are derived from the actions and
        // may not be supplied.
        std::vector<std::vector<Elem>> products;  // indexed i*n*n + j*n + k

        Spec() = default;
        explicit Spec(int n);
        int order() const { return static_cast<int>(diagonal.size()); }
        std::vector<Elem>& product(int i, int j, int k);
    };

    /// Validates everything: local diagonals, bimodule ring wiring, bilinearity
    /// and balance of every proper product, and the associativity condition
    /// (exhaustive for pairwise-distinct adjacent indices, seeded samples for
    /// mixed patterns).  Throws NotLocal, BalanceViolation, AlphaViolation.
    static FormalRingPtr build(Spec spec);

    int order() const { return n_; }
    const RingPtr& ring(int i) const { return diag_[i]; }
    const BimodulePtr& bimodule(int i, int j) const { return bim_[static_cast<size_t>(i) * n_ + j]; }
    /// phi_{i,j,k}(a, b); all index patterns allowed (diagonal ones act).
    Elem prod(int i, int j, int k, Elem a, Elem b) const {
        const auto& t = prod_[(static_cast<size_t>(i) * n_ + j) * n_ + k];
        return t[static_cast<size_t>(a) * bimodule(j, k)->size() + b];
    }

    MatrixElement zero_element() const;
    MatrixElement one_element() const;
    /// Canonical idempotent e_i.
    MatrixElement idempotent(int i) const;
    /// E_{i,j}(a): the element supported at one cell.
    MatrixElement unit_matrix(int i, int j, Elem a) const;

    MatrixElement add(const MatrixElement& x, const MatrixElement& y) const;
    MatrixElement neg(const MatrixElement& x) const;
    MatrixElement mul(const MatrixElement& x, const MatrixElement& y) const;
    bool is_zero(const MatrixElement& x) const;

    /// log of |R| would overflow easily; this is the exact product of all
    /// bimodule sizes clamped at LLONG_MAX.
    long long total_size() const;

    /// Finest partition of indices with all cross bimodules zero.
    std::vector<std::vector<int>> central_idempotent_blocks() const;
    bool is_indecomposable() const { return central_idempotent_blocks().size() == 1; }

    /// True when all proper products (i != j != k) are zero maps.
    bool is_trivial() const;

    /// e_iR and Re_jR are isomorphic iff left multiplication by some y in
    /// B_{j,i} is a bijection in every coordinate; basic means no two are.
    bool is_basic() const;

    uint64_t content_hash() const;
    bool tables_identical(const FormalMatrixRing& other) const;

    friend FormalRingPtr corner(const FormalRingPtr& ring, const std::vector<int>& indices);
    friend FormalRingPtr opposite_ring(const FormalRingPtr& ring);

  private:
    FormalMatrixRing() = default;
    int n_ = 0;
    std::vector<RingPtr> diag_;
    std::vector<BimodulePtr> bim_;
    std::vector<std::vector<Elem>> prod_;
};

/// The corner eRe for e the sum of the chosen canonical idempotents; restricted
/// tables, re-validated.
FormalRingPtr corner(const FormalRingPtr& ring, const std::vector<int>& indices);

/// The opposite ring as a formal matrix ring: transposed bimodules and
/// products with swapped arguments.
FormalRingPtr opposite_ring(const FormalRingPtr& ring);

/// Trivial formal matrix ring: all proper products zero.
FormalRingPtr trivial_formal_ring(std::vector<RingPtr> diagonal,
                                  std::vector<BimodulePtr> bimodules);

struct FlattenResult {
    RingPtr ring;
    // Bijection between matrix elements and flat carrier indices.
    long long size = 0;
    std::vector<long long> cell_stride;  // per (i,j) cell, row-major
    long long index_of(const MatrixElement& x) const;
    MatrixElement element_of(const FormalMatrixRing& parent, long long code) const;
};

/// The explicit finite ring on tuple carriers; validate_ring passes and the
/// canonical idempotents map to orthogonal local idempotents.
/// Throws SizeLimitExceeded above Limits::flatten_bound.
FlattenResult flatten(const FormalRingPtr& ring);

}  // namespace fmr
