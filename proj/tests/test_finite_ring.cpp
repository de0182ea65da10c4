#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fmr/constructions.hpp"

using namespace fmr;

namespace {

std::vector<Elem> set_of(std::initializer_list<Elem> v) { return std::vector<Elem>(v); }

}  // namespace

TEST_CASE("zmod tables validate") {
    RingPtr z4 = ring_zmod(4);
    CHECK(z4->size() == 4);
    CHECK(z4->add(2, 3) == 1);
    CHECK(z4->mul(2, 3) == 2);
    CHECK(z4->is_local());
}

TEST_CASE("corrupted multiplication table is rejected with a witness") {
    RingPtr z4 = ring_zmod(4);
    auto mul = z4->mul_table();
    mul[2 * 4 + 3] = 1;  // break 2*3
    bool threw = false;
    try {
        FiniteRing::make(4, z4->add_table(), mul, 0, 1);
    } catch (const AxiomViolation& e) {
        threw = true;
        CHECK((e.axiom == "distributivity" || e.axiom == "mul-associativity"));
        CHECK(!e.witness.empty());
    }
    CHECK(threw);
}

TEST_CASE("one-element tables give the zero ring") {
    RingPtr z1 = ring_zmod(1);
    CHECK(z1->size() == 1);
    CHECK(z1->is_zero_ring());
    CHECK(z1->zero() == z1->one());
}

TEST_CASE("units") {
    CHECK(ring_zmod(4)->units() == set_of({1, 3}));
    // F_2[x]/(x^2) as the trivial extension of GF(2) by itself:
    // carrier (a|m) -> 2a + m, so 1 and 1+x are the codes 2 and 3.
    RingPtr fx = trivial_extension(ring_gf(2));
    CHECK(fx->units() == set_of({2, 3}));
    for (int q : {2, 3, 4, 5, 8, 9}) {
        RingPtr f = ring_gf(q);
        CHECK(static_cast<int>(f->units().size()) == q - 1);
    }
}

TEST_CASE("jacobson radical") {
    CHECK(ring_zmod(4)->jacobson_radical() == set_of({0, 2}));
    CHECK(ring_gf(5)->jacobson_radical() == set_of({0}));
    RingPtr fx = trivial_extension(ring_gf(2));
    CHECK(fx->jacobson_radical() == set_of({0, 1}));  // the (0|m) part
}

TEST_CASE("locality and residue fields") {
    RingPtr z4 = ring_zmod(4);
    CHECK(z4->is_local());
    auto res = local_residue(z4);
    REQUIRE(res.has_value());
    CHECK(res->field->size() == 2);
    CHECK(res->proj[2] == res->proj[0]);
    CHECK(res->proj[3] == res->proj[1]);

    CHECK(!ring_zmod(6)->is_local());
    CHECK(!local_residue(ring_zmod(6)).has_value());

    RingPtr fx = trivial_extension(ring_gf(2));
    CHECK(fx->is_local());
    CHECK(local_residue(fx)->field->size() == 2);
}

TEST_CASE("radical is nilpotent on the corpus") {
    for (const RingPtr& r : {ring_zmod(4), ring_zmod(8), ring_zmod(9), ring_gf(4),
                             trivial_extension(ring_gf(3)), ring_two_var_nil(2)}) {
        // Multiply the radical set by itself until it stabilizes; must hit {0}.
        std::vector<Elem> power = r->jacobson_radical();
        for (int step = 0; step < 16 && !(power.size() == 1 && power[0] == r->zero()); ++step) {
            std::vector<char> seen(r->size(), 0);
            std::vector<Elem> next;
            for (Elem a : power)
                for (Elem b : r->jacobson_radical()) {
                    Elem v = r->mul(a, b);
                    if (!seen[v]) {
                        seen[v] = 1;
                        next.push_back(v);
                    }
                }
            // additive closure
            for (size_t t = 0; t < next.size(); ++t)
                for (size_t u = 0; u <= t; ++u) {
                    Elem v = r->add(next[t], next[u]);
                    if (!seen[v]) {
                        seen[v] = 1;
                        next.push_back(v);
                    }
                }
            std::sort(next.begin(), next.end());
            if (next.empty()) next.push_back(r->zero());
            power = std::move(next);
        }
        CHECK(power == set_of({r->zero()}));
    }
}

TEST_CASE("field isomorphisms and automorphisms") {
    CHECK(ring_isomorphism(*ring_gf(4), *ring_gf(4)).has_value());
    CHECK(!ring_isomorphism(*ring_zmod(4), *trivial_extension(ring_gf(2))).has_value());
    CHECK(ring_automorphisms(*ring_gf(4)).size() == 2);   // identity and Frobenius
    CHECK(ring_automorphisms(*ring_gf(9)).size() == 2);
    CHECK(ring_automorphisms(*ring_gf(8)).size() == 3);
    auto frob = frobenius_map(*ring_gf(4));
    auto auts = ring_automorphisms(*ring_gf(4));
    CHECK(std::find(auts.begin(), auts.end(), frob) != auts.end());
}

TEST_CASE("two-variable nil ring is local with a fat radical") {
    RingPtr r = ring_two_var_nil(2);
    CHECK(r->size() == 8);
    CHECK(r->is_local());
    CHECK(r->jacobson_radical().size() == 4);
}
