#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fmr/algebra.hpp"
#include "fmr/constructions.hpp"

using namespace fmr;

namespace {

// The simple module over a local ring: the residue field with the action
// through the canonical projection.
FiniteModule residue_simple(const RingPtr& ring) {
    auto res = local_residue(ring);
    REQUIRE(res.has_value());
    const FiniteRing& M = *res->field;
    std::vector<Elem> act(static_cast<size_t>(M.size()) * ring->size());
    for (Elem m = 0; m < M.size(); ++m)
        for (Elem r = 0; r < ring->size(); ++r)
            act[static_cast<size_t>(m) * ring->size() + r] = M.mul(m, res->proj[r]);
    return FiniteModule::make(ring, Side::Right, M.size(), M.add_table(), std::move(act));
}

// Direct sum of two copies of the residue simple.
FiniteModule residue_square(const RingPtr& ring) {
    FiniteModule s = residue_simple(ring);
    const int n = s.size() * s.size();
    auto code = [&](Elem a, Elem b) { return a * s.size() + b; };
    std::vector<Elem> add(static_cast<size_t>(n) * n), act(static_cast<size_t>(n) * ring->size());
    for (Elem a = 0; a < s.size(); ++a)
        for (Elem b = 0; b < s.size(); ++b) {
            for (Elem c = 0; c < s.size(); ++c)
                for (Elem d = 0; d < s.size(); ++d)
                    add[static_cast<size_t>(code(a, b)) * n + code(c, d)] =
                        code(s.add(a, c), s.add(b, d));
            for (Elem r = 0; r < ring->size(); ++r)
                act[static_cast<size_t>(code(a, b)) * ring->size() + r] =
                    code(s.act(a, r), s.act(b, r));
        }
    return FiniteModule::make(ring, Side::Right, n, std::move(add), std::move(act));
}

std::vector<Elem> set_of(std::initializer_list<Elem> v) { return std::vector<Elem>(v); }

}  // namespace

TEST_CASE("socle by annihilator, with the brute-force oracle built in") {
    FiniteModule z4 = FiniteModule::regular(ring_zmod(4), Side::Right);
    CHECK(socle(z4).elems == set_of({0, 2}));
    FiniteModule f5 = FiniteModule::regular(ring_gf(5), Side::Right);
    CHECK(socle(f5).size() == 5);
    FiniteModule zero = FiniteModule::zero(ring_zmod(4), Side::Right);
    CHECK(socle(zero).elems == set_of({0}));
    CHECK(socle(z4) == socle_brute(z4));
}

TEST_CASE("top is the quotient by M J(R)") {
    FiniteModule z4 = FiniteModule::regular(ring_zmod(4), Side::Right);
    QuotientModule t = top(z4);
    CHECK(t.mod.size() == 2);
    CHECK(t.proj.images[0] == t.proj.images[2]);
    FiniteModule s = residue_simple(ring_zmod(4));
    CHECK(top(s).mod.size() == 2);  // simple stays itself
    FiniteModule fx = FiniteModule::regular(trivial_extension(ring_gf(2)), Side::Right);
    CHECK(top(fx).mod.size() == 2);
}

TEST_CASE("essential submodules") {
    FiniteModule z4 = FiniteModule::regular(ring_zmod(4), Side::Right);
    CHECK(is_essential(SubmoduleSet::of({0, 2}, 4, Side::Right), z4));
    CHECK(!is_essential(SubmoduleSet::of({0}, 4, Side::Right), z4));
    CHECK(is_essential(SubmoduleSet::of({0, 1, 2, 3}, 4, Side::Right), z4));
}

TEST_CASE("simplicity") {
    CHECK(is_simple(residue_simple(ring_zmod(4))));
    CHECK(!is_simple(FiniteModule::regular(ring_zmod(4), Side::Right)));
    CHECK(!is_simple(FiniteModule::zero(ring_zmod(4), Side::Right)));
}

TEST_CASE("character module") {
    BimodulePtr c4 = character_module(ring_zmod(4));
    CHECK(c4->size() == 4);
    // Its right socle over Z/4 has size 2.
    CHECK(socle(c4->right_module()).size() == 2);
    // Over a field the character module is isomorphic to the field itself.
    BimodulePtr c5 = character_module(ring_gf(5));
    auto iso =
        module_isomorphic(c5->right_module(), FiniteModule::regular(ring_gf(5), Side::Right));
    CHECK(iso.has_value());
    // Faithful on both sides for the corpus.
    for (const RingPtr& r : {ring_zmod(4), ring_gf(4), trivial_extension(ring_gf(2))}) {
        BimodulePtr c = character_module(r);
        CHECK(annihilator(c->right_module()).size() == 1);
        CHECK(annihilator(c->left_module()).size() == 1);
    }
}

TEST_CASE("injective envelopes") {
    // E(F_2) over Z/4 is Z/4 itself (size 4).
    EnvelopeResult e = injective_envelope(residue_simple(ring_zmod(4)));
    CHECK(e.envelope.size() == 4);
    // Over a field the envelope is the simple itself.
    EnvelopeResult ef = injective_envelope(residue_simple(ring_gf(3)));
    CHECK(ef.envelope.size() == 3);
    // Over F_2[x]/(x^2) the envelope has size 4.
    EnvelopeResult ex = injective_envelope(residue_simple(trivial_extension(ring_gf(2))));
    CHECK(ex.envelope.size() == 4);
    // The envelope is injective.
    CHECK(is_injective(e.envelope));
    CHECK(is_injective(ex.envelope));
}

TEST_CASE("injectivity") {
    CHECK(is_injective(FiniteModule::regular(ring_zmod(4), Side::Right)));
    CHECK(!is_injective(residue_simple(ring_zmod(4))));
    CHECK(is_injective(FiniteModule::regular(ring_gf(4), Side::Right)));
    CHECK(!is_injective(residue_simple(trivial_extension(ring_gf(2)))));
    // Every module over a field is injective.
    CHECK(is_injective(residue_simple(ring_gf(2))));
}

TEST_CASE("module isomorphism search") {
    FiniteModule z4 = FiniteModule::regular(ring_zmod(4), Side::Right);
    auto self = module_isomorphic(z4, z4);
    REQUIRE(self.has_value());
    CHECK(is_module_hom(z4, z4, self->images));

    // Z/4 vs F_2 + F_2 over Z/4: same size, different annihilators.
    CHECK(!module_isomorphic(z4, residue_square(ring_zmod(4))).has_value());

    // soc(Z/4) and top(Z/4) are isomorphic simple modules.
    auto soc_r = restrict_module(z4, socle(z4));
    auto iso = module_isomorphic(soc_r.mod, top(z4).mod);
    CHECK(iso.has_value());
}

TEST_CASE("isomorphisms preserve socles") {
    FiniteModule fx = FiniteModule::regular(trivial_extension(ring_gf(2)), Side::Right);
    auto self = module_isomorphic(fx, fx);
    REQUIRE(self.has_value());
    SubmoduleSet soc_m = socle(fx);
    for (Elem x : soc_m.elems) CHECK(soc_m.contains(self->images[x]));
}

TEST_CASE("envelope of every simple over corpus rings is essential and injective") {
    for (const RingPtr& r : {ring_zmod(4), ring_zmod(8), ring_gf(4),
                             trivial_extension(ring_gf(3)), ring_two_var_nil(2)}) {
        EnvelopeResult e = injective_envelope(residue_simple(r));
        CHECK(is_injective(e.envelope));
    }
}
