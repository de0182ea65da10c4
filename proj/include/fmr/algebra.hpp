#pragma once

#include <optional>

#include "fmr/module.hpp"

namespace fmr {

// Structure theory of one-sided finite modules.  A finite ring is semiprimary,
// so soc(M) = ann(J) is the primary algorithm; the simple-submodule-sum oracle
// cross-checks it under the configured size bound.

/// soc(M) = { m : m*J(R) = 0 } (or J(R)*m = 0 on the left).
SubmoduleSet socle(const FiniteModule& m);

/// Independent oracle: sum of all simple submodules, found by enumerating
/// cyclic submodules and filtering simples.  Throws SizeLimitExceeded.
SubmoduleSet socle_brute(const FiniteModule& m);

/// A module together with the projection from its parent.
struct QuotientModule {
    FiniteModule mod;
    ModuleMap proj;
};

/// M / N for a submodule N.
QuotientModule quotient_module(const FiniteModule& m, const SubmoduleSet& n);

/// top(M) = M / M*J(R).
QuotientModule top(const FiniteModule& m);

/// M*J(R) as a submodule set.
SubmoduleSet radical_submodule(const FiniteModule& m);

/// N is essential in M: every nonzero cyclic submodule meets N.
/// Precondition: N is a submodule of M (verified).
bool is_essential(const SubmoduleSet& n, const FiniteModule& m);

/// Essentiality of a subset T inside a subset M of the same ambient module
/// (both closed under the action); used for socles inside coordinate bimodules.
bool is_essential_in_subset(const SubmoduleSet& t, const SubmoduleSet& inside,
                            const FiniteModule& ambient);

/// Nonzero and generated by every nonzero element.
bool is_simple(const FiniteModule& m);
/// Same test applied to a submodule set inside an ambient module.
bool is_simple_subset(const SubmoduleSet& s, const FiniteModule& ambient);

/// The annihilator { r in R : m*r = 0 for all m }.
std::vector<Elem> annihilator(const FiniteModule& m);

/// Restriction of a module to a submodule set, with the index maps.
struct RestrictedModule {
    FiniteModule mod;
    std::vector<Elem> to_ambient;    // restricted index -> ambient index
    std::vector<Elem> from_ambient;  // ambient index -> restricted index or -1
};
RestrictedModule restrict_module(const FiniteModule& m, const SubmoduleSet& s);

/// Additive character dual Hom(R^+, Q/Z) as an R-R-bimodule; carrier size |R|.
/// Character values live in Z/exponent(R^+).  Right action (f*r)(x) = f(rx),
/// left action (r*f)(x) = f(xr).
BimodulePtr character_module(const RingPtr& ring);

/// Enumerate all additive characters of the module's underlying group, as
/// value vectors modulo the additive exponent, sorted lexicographically.
std::vector<std::vector<int>> additive_characters(const FiniteModule& m);

struct EnvelopeResult {
    FiniteModule envelope;          // restricted module on the closure
    ModuleMap embedding;            // T -> envelope
    SubmoduleSet image_in_ambient;  // inside character_module(R)
};

/// Injective envelope of a simple right module, realized inside the character
/// module and grown by greedy essential extension.
EnvelopeResult injective_envelope(const FiniteModule& simple);

/// M is injective iff the greedy essential extension of M inside C(R)^k
/// returns M itself (k = number of simple summands of soc(M)).
bool is_injective(const FiniteModule& m);

/// Explicit module isomorphism search with invariant pruning.
/// Returns the elementwise map or nullopt.  Throws SizeLimitExceeded.
std::optional<ModuleMap> module_isomorphic(const FiniteModule& a, const FiniteModule& b);

/// Verifies that a map is additive and action-compatible.
bool is_module_hom(const FiniteModule& a, const FiniteModule& b, const std::vector<Elem>& images);

}  // namespace fmr
