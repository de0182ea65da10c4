#pragma once

#include "fmr/analysis.hpp"

namespace fmr {

// ---------------------------------------------------------------------------
// Named coefficient rings.

/// Z/n with the usual tables.
RingPtr ring_zmod(int n);
/// GF(q) for a prime power q, built from a least irreducible polynomial.
/// Throws UnresolvedReference when q is not a prime power.
RingPtr ring_gf(int q);
/// Trivial extension of a ring by a bimodule over it: carrier K x M with
/// (a,m)(b,n) = (ab, a n + m b).  Local when K is local.
RingPtr trivial_extension(const RingPtr& base, const BimodulePtr& bimodule);
/// Shorthand: trivial extension of a ring by itself.
RingPtr trivial_extension(const RingPtr& base);
/// F_q[x,y]/(x^2,xy,y^2): local with a two-dimensional socle (not Frobenius).
RingPtr ring_two_var_nil(int q);

/// Resolve "Z/n", "GF(q)" or "trivext(...)" (recursively).
/// Throws UnresolvedReference for anything else.
RingPtr named_ring(const std::string& name);

/// The p-power map of a finite field, as an images vector (an automorphism).
std::vector<Elem> frobenius_map(const FiniteRing& field);
/// characteristic = additive order of 1.
int ring_characteristic(const FiniteRing& ring);

/// The residue field of `left` as a bimodule between two local rings whose
/// residue fields are isomorphic; the right action is twisted by the given
/// Frobenius power.  Throws UnresolvedReference when residues do not match.
BimodulePtr residue_bimodule(const RingPtr& left, const RingPtr& right, int twist = 0);

/// An order-1 formal matrix ring over a local ring.
FormalRingPtr as_order_one(const RingPtr& local_ring);

// ---------------------------------------------------------------------------
// Generators.

/// The default coordinate bimodule for cycle rings: the ring itself when
/// self-injective, otherwise the injective envelope of the simple module
/// realized inside the character module (commutative base only).
BimodulePtr envelope_bimodule(const RingPtr& local_ring);

/// Trivial formal matrix ring with R_i = S and B_{i,i+1} = E around a cycle;
/// Nakayama permutation (1 2 ... n).  Requires E to have a simple essential
/// socle on both sides (BadEnvelope otherwise).  n = 1 returns S itself.
FormalRingPtr cycle_ring(const RingPtr& base, const BimodulePtr& envelope, int n);

/// The support-pattern ring: cycle ring with extra residue-field bimodules on
/// the shifted diagonals j = i+k and j = i-k+1 for k in I, and pairing
/// products through multiplication in the residue field.  The base must be a
/// finite Frobenius local ring (E = S).
FormalRingPtr support_pattern_ring(int n, const std::vector<int>& shifts, const RingPtr& base);

/// The cyclic-quiver algebra F_q Q / (paths of length >= bound) with arrows
/// i+1 -> i, as a formal matrix ring; row i is generated by paths from i.
FormalRingPtr serial_quiver_algebra(int q, int n, int bound);

/// Concatenation pi = sigma followed by sigma' on the shifted block.
Permutation concatenate(const Permutation& sigma, const Permutation& sigma_prime);

/// A pair of finite fields with mutual (possibly Frobenius-twisted) embeddings
/// giving the K-L and L-K bimodule structures.
struct CompatibleFieldPair {
    RingPtr K, L;
    std::vector<Elem> kl_embed;  // L -> K; the right L-action on K is x * kl(y)
    std::vector<Elem> lk_embed;  // K -> L; the right K-action on L is y * lk(x)
};
/// K = L = GF(q) with the right actions twisted by Frobenius^twist.
CompatibleFieldPair compatible_finite_fields(int q, int twist = 0);

/// Everything the glueing construction needs, with verified witnesses.
struct GlueSpec {
    FormalRingPtr left_ring;   // S
    FormalRingPtr right_ring;  // S'
    Permutation sigma, sigma_prime;
    CompatibleFieldPair fields;
    // alpha_i: residue field of S_i -> K, consistent along the cycles of sigma
    // (condition (C) fails when the residue isomorphisms do not close up).
    std::vector<std::vector<Elem>> left_residue_to_K;
    std::vector<std::vector<Elem>> right_residue_to_L;
    // emb_i: K -> T'_i inside B_{i,sigma(i)}, mapping 1 to the least nonzero
    // socle generator; same on the right with L.
    std::vector<std::vector<Elem>> left_socle_embed;
    std::vector<std::vector<Elem>> right_socle_embed;
};

/// Checks assumptions (A)-(D') and assembles the witnesses.
/// Throws AssumptionFailed with the failing condition letter.
GlueSpec make_glue_spec(const FormalRingPtr& S, const FormalRingPtr& S_prime,
                        const CompatibleFieldPair& fields);

/// The two-block glueing: S and S' on the diagonal, copies of K and L in the
/// off-diagonal blocks, new products zero except the pairing products through
/// the balanced map into the socle embeddings.
FormalRingPtr glue(const GlueSpec& spec);

/// The four-block generalization: only the corners at the chosen cycle unions
/// are glued; all other new products are zero.  I and J must be unions of
/// cycles of the respective permutations.
FormalRingPtr glue_general(const FormalRingPtr& S, const FormalRingPtr& S_prime,
                           const std::vector<int>& I, const std::vector<int>& J,
                           const CompatibleFieldPair& fields);

}  // namespace fmr
