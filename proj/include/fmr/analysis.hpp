#pragma once

#include <optional>
#include <string>

#include "fmr/row_module.hpp"

namespace fmr {

/// A permutation of {1..n}, stored 0-based.
struct Permutation {
    std::vector<int> images;

    static Permutation identity(int n);
    int n() const { return static_cast<int>(images.size()); }
    int operator()(int i) const { return images[i]; }
    bool is_identity() const;
    Permutation inverse() const;
    std::vector<std::vector<int>> cycles() const;  // fixed points included
    std::string cycle_string() const;              // "(1 2 3)(4)" 1-based, "id" for identity
    bool operator==(const Permutation& o) const { return images == o.images; }
};

/// Parse "id", "(1 2)(3)" or comma-separated images "2,1,3".
std::optional<Permutation> parse_permutation(const std::string& text, int n);

/// Verdict for one condition at one index, with a witness when it fails.
struct ConditionVerdict {
    bool pass = false;
    // Meaning depends on the condition; indices are 0-based coordinates and
    // carrier elements.
    std::vector<int> witness;
    std::string note;
};

/// Full evaluation of the combinatorial criterion together with the
/// essential-socle refinement, per index.
struct CriterionReport {
    Permutation pi;
    // cond1[i][j], cond1p[i][j]: condition (1)/(1') at row i, slot j (the j ==
    // pi(i) entries are vacuously true placeholders).
    std::vector<std::vector<ConditionVerdict>> cond1, cond1p;
    std::vector<ConditionVerdict> cond2, cond2p;
    // Computed sub-bimodules inside B_{i,pi(i)}.
    std::vector<SubmoduleSet> N_right, N_left;  // N_{pi(i)}, N'_i
    std::vector<SubmoduleSet> T_right, T_left;  // T_{pi(i)}, T'_i
    bool criterion_pass = false;

    // Essential-socle conditions (a),(b),(a'),(b'); evaluated regardless of the
    // criterion verdict so failures can be reported with witnesses.
    std::vector<ConditionVerdict> cond_a, cond_ap;
    std::vector<std::vector<ConditionVerdict>> cond_b, cond_bp;
    bool essential_right_pass = false;
    bool essential_left_pass = false;
};

enum class Classification { NoNakayama, NakayamaOnly, QF, Frobenius };
const char* classification_name(Classification c);

struct AnalysisReport {
    uint64_t ring_hash = 0;
    int order = 0;
    bool is_basic = true;
    std::vector<int> multiplicities;  // all 1 for basic rings, recorded
    std::optional<Permutation> nakayama;
    CriterionReport criterion;
    bool right_socle_essential = false;
    bool left_socle_essential = false;
    bool socles_coincide = false;
    Classification classification = Classification::NoNakayama;
    std::vector<std::vector<int>> blocks;
};

/// Socle of e_iR via the coordinatewise formula (Lemma route).
RowSubmodule row_socle(const FormalRingPtr& ring, int i);
/// Independent definition-level oracle on e_iR.
RowSubmodule brute_socle(const FormalRingPtr& ring, int i);

/// Definition-level detection: for each i the socle of e_iR must be simple and
/// concentrated at one coordinate pi(i), the column socle of Re_{pi(i)} simple
/// at i, and pi bijective.
std::optional<Permutation> detect_nakayama_direct(const FormalRingPtr& ring);

/// The combinatorial criterion for a prescribed permutation, all four
/// condition families, with witnesses and the computed N/T sub-bimodules.
/// Also evaluates the essential-socle conditions (a),(b),(a'),(b').
CriterionReport check_criterion(const FormalRingPtr& ring, const Permutation& pi);

/// Essential-socle refinement; requires the criterion to pass.
/// Throws PrerequisiteFailed when pi is not a Nakayama permutation.
CriterionReport check_essential_criterion(const FormalRingPtr& ring, const Permutation& pi);

/// Definition-level essentiality of the socle as a one-sided ideal: checks
/// is-essential of the row socle inside every e_iR (columns for the left side).
bool essential_socle_direct(const FormalRingPtr& ring, Side side);

/// Full report: detection, criterion, essentiality, socle coincidence, blocks.
/// When pi_hint is set the criterion section evaluates that permutation,
/// otherwise the detected one (identity if none).
AnalysisReport classify(const FormalRingPtr& ring,
                        const std::optional<Permutation>& pi_hint = std::nullopt);

/// Ring isomorphism between residue fields along the permutation, solved from
/// k*m = m*phi(k) on the coincident simple socle.  Throws SoclesDiffer.
struct ResidueFieldIso {
    RingPtr from, to;  // residue fields of R_i and R_{pi(i)}
    std::vector<Elem> images;
};
ResidueFieldIso residue_field_iso(const FormalRingPtr& ring, int i, const Permutation& pi);

/// Fixed points with simple corners must be central blocks.
struct FixedPointVerdict {
    int index;
    bool simple_corner;
    bool pass;  // vacuous (not simple) or verified central
    std::string note;
};
std::vector<FixedPointVerdict> verify_fixed_point_prop(const FormalRingPtr& ring,
                                                       const Permutation& pi);

/// Coordinate simple modules that are injective over the flattened ring must
/// generate central field blocks.
struct SimpleInjectiveVerdict {
    int index;
    bool injective;
    bool pass;
    std::string note;
};
std::vector<SimpleInjectiveVerdict> verify_simple_injective_cor(const FormalRingPtr& ring);

/// Bundle of structural results assuming a Nakayama permutation (and
/// essentiality where the statement requires it).
struct StructureVerdicts {
    ConditionVerdict radical_containment;      // im(phi_{i,j,i}) inside J(R_i)
    ConditionVerdict pairing_faithful;         // left annihilator of B_{i,pi(i)} zero
    ConditionVerdict trivial_ring_cycle;       // trivial indecomposable => pi an n-cycle
    ConditionVerdict triangular_symmetry;      // (1-e)Re = 0 <=> eR(1-e) = 0, prefix splits
    ConditionVerdict shifted_diagonal_support; // support closure for cyclic pi
    ConditionVerdict residue_iso_cycles;       // residue_field_iso valid along every cycle
};
StructureVerdicts verify_structure_props(const FormalRingPtr& ring, const Permutation& pi);

/// im(phi_{i,j,i}) inside J(R_i) for all i != j (checked exhaustively).
ConditionVerdict radical_containment(const FormalRingPtr& ring);

}  // namespace fmr
