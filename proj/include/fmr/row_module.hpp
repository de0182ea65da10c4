#pragma once

#include "fmr/formal_matrix.hpp"

namespace fmr {

/// A right module over a formal matrix ring, stored per coordinate: M_j is a
/// right R_j-module and f_{i,j}: M_i x B_{i,j} -> M_j are the multiplication
/// maps.  Elements are coordinate tuples; the module is the direct sum of the
/// epsilon_j M_j pieces under the canonical idempotent action.
class RowModule {
  public:
    /// e_i R = (B_{i,1}, ..., B_{i,n}) with the phi tables as mult maps.
    static RowModule of_idempotent(const FormalRingPtr& ring, int i);
    /// Column module Re_j, realized as a row module over the opposite ring:
    /// components B_{k,j} as left R_k-modules.
    static RowModule of_idempotent_column(const FormalRingPtr& ring, int j);

    const FormalRingPtr& parent() const { return parent_; }
    int coordinates() const { return static_cast<int>(comps_.size()); }
    const FiniteModule& component(int j) const { return comps_[j]; }
    /// f_{i,j}(m, b) for i != j.
    Elem mult(int i, int j, Elem m, Elem b) const;

    long long size() const;

    /// Row-module element as one carrier index per coordinate.
    using Tuple = std::vector<Elem>;
    Tuple zero_tuple() const;
    bool is_zero_tuple(const Tuple& t) const;

    /// Coordinates of the cyclic submodule xR: (xR)_l is the additive closure
    /// of the union over k of x_k * B_{k,l}.
    std::vector<std::vector<Elem>> cyclic_coordinates(const Tuple& x) const;

  private:
    FormalRingPtr parent_;
    std::vector<FiniteModule> comps_;
    std::vector<std::vector<Elem>> maps_;  // (i,j) -> |M_i| x |B_ij| table, i != j
    int row_index_ = -1;
};

/// Per-coordinate element sets forming an R-submodule of a row module
/// (N_i * B_{i,j} inside N_j for all i, j).
struct RowSubmodule {
    std::vector<SubmoduleSet> coords;

    bool is_zero(const RowModule& m) const;
    long long size() const;
    bool operator==(const RowSubmodule& o) const { return coords == o.coords; }
    /// Indices with a nonzero coordinate.
    std::vector<int> support(const RowModule& m) const;
};

/// Verify the submodule criterion N_i B_{i,j} inside N_j; throws
/// InternalCheckFailed on violation (used as a postcondition).
void verify_row_submodule(const RowModule& m, const RowSubmodule& n);

/// Socle via the coordinatewise formula: N_j = elements of M_j killed by all
/// proper multiplications out of j, then soc(N_j) as an R_j-module.
RowSubmodule row_socle_of(const RowModule& m);

/// Independent oracle: sum of all simple R-submodules found by enumerating
/// cyclic submodules.  Throws SizeLimitExceeded beyond the row bound.
RowSubmodule row_socle_brute(const RowModule& m);

/// N essential in M: every nonzero element's cyclic submodule meets N.
bool row_essential(const RowModule& m, const RowSubmodule& n);

/// Condition (beta) checked exhaustively (bounded by the row bound).
void verify_row_condition_beta(const RowModule& m);

}  // namespace fmr
