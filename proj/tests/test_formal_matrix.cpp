#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fmr/constructions.hpp"
#include "fmr/row_module.hpp"

using namespace fmr;

namespace {

FormalRingPtr cycle_z4(int n) {
    RingPtr z4 = ring_zmod(4);
    return cycle_ring(z4, FiniteBimodule::regular(z4), n);
}

}  // namespace

TEST_CASE("order-1 build is the ring itself") {
    FormalRingPtr r = as_order_one(ring_zmod(4));
    CHECK(r->order() == 1);
    CHECK(r->total_size() == 4);
    CHECK(r->is_basic());
    CHECK(r->is_trivial());
}

TEST_CASE("trivial formal rings always satisfy associativity") {
    RingPtr z4 = ring_zmod(4);
    RingPtr f2 = ring_gf(2);
    std::vector<RingPtr> diag{z4, f2};
    std::vector<BimodulePtr> bims(4);
    bims[1] = residue_bimodule(z4, f2, 0);
    bims[2] = residue_bimodule(f2, z4, 0);
    FormalRingPtr r = trivial_formal_ring(diag, bims);
    CHECK(r->order() == 2);
    CHECK(r->is_trivial());
}

TEST_CASE("cycle ring over Z/4 builds and has the expected sizes") {
    FormalRingPtr r = cycle_z4(3);
    CHECK(r->order() == 3);
    CHECK(r->total_size() == 4096);  // 4^3 diagonal, 4^3 envelope, zeros
    RowModule row = RowModule::of_idempotent(r, 0);
    CHECK(row.size() == 16);  // 4 * 4 * 1
}

TEST_CASE("corrupting a product table trips the alpha or balance check") {
    // Start from the support-pattern ring, whose pairing products are nonzero,
    // and corrupt one entry.
    FormalRingPtr good = support_pattern_ring(3, {2}, ring_zmod(4));
    FormalMatrixRing::Spec spec(3);
    for (int i = 0; i < 3; ++i) spec.diagonal[i] = good->ring(i);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) spec.bimodules[static_cast<size_t>(i) * 3 + j] = good->bimodule(i, j);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                if (i == j || j == k) continue;
                const int sij = good->bimodule(i, j)->size();
                const int sjk = good->bimodule(j, k)->size();
                std::vector<Elem> t(static_cast<size_t>(sij) * sjk);
                for (Elem a = 0; a < sij; ++a)
                    for (Elem b = 0; b < sjk; ++b)
                        t[static_cast<size_t>(a) * sjk + b] = good->prod(i, j, k, a, b);
                spec.product(i, j, k) = std::move(t);
            }
    // Corrupt one nonzero pairing product entry.
    auto& table = spec.product(0, 2, 1);
    REQUIRE(!table.empty());
    table[1 * good->bimodule(2, 1)->size() + 1] =
        (table[1 * good->bimodule(2, 1)->size() + 1] + 1) % good->bimodule(0, 1)->size();
    bool threw = false;
    try {
        FormalMatrixRing::build(std::move(spec));
    } catch (const BalanceViolation&) {
        threw = true;
    } catch (const AlphaViolation&) {
        threw = true;
    }
    CHECK(threw);
}

TEST_CASE("non-local diagonal is rejected") {
    FormalMatrixRing::Spec spec(1);
    spec.diagonal[0] = ring_zmod(6);
    bool threw = false;
    try {
        FormalMatrixRing::build(std::move(spec));
    } catch (const NotLocal& e) {
        threw = true;
        CHECK(e.index == 1);
    }
    CHECK(threw);
}

TEST_CASE("canonical idempotents are orthogonal and sum to one") {
    FormalRingPtr r = cycle_z4(3);
    MatrixElement sum = r->zero_element();
    for (int i = 0; i < 3; ++i) {
        MatrixElement ei = r->idempotent(i);
        CHECK(r->mul(ei, ei) == ei);
        for (int j = 0; j < i; ++j) {
            MatrixElement ej = r->idempotent(j);
            CHECK(r->is_zero(r->mul(ei, ej)));
            CHECK(r->is_zero(r->mul(ej, ei)));
        }
        sum = r->add(sum, ei);
    }
    CHECK(sum == r->one_element());
}

TEST_CASE("single-entry products unfold to the product table") {
    FormalRingPtr r = support_pattern_ring(3, {2}, ring_zmod(4));
    // E_{1,3}(m) * E_{3,2}(n) should have the single entry phi_{1,3,2}(m,n).
    for (Elem m = 0; m < r->bimodule(0, 2)->size(); ++m)
        for (Elem n = 0; n < r->bimodule(2, 1)->size(); ++n) {
            MatrixElement x = r->unit_matrix(0, 2, m);
            MatrixElement y = r->unit_matrix(2, 1, n);
            MatrixElement z = r->mul(x, y);
            CHECK(z.at(0, 1) == r->prod(0, 2, 1, m, n));
            z.at(0, 1) = r->bimodule(0, 1)->zero_elem();
            CHECK(r->is_zero(z));
        }
}

TEST_CASE("row module of an idempotent satisfies the module axioms") {
    FormalRingPtr r = cycle_z4(3);
    for (int i = 0; i < 3; ++i) {
        RowModule row = RowModule::of_idempotent(r, i);
        verify_row_condition_beta(row);
        long long sz = 1;
        for (int j = 0; j < 3; ++j) sz *= row.component(j).size();
        CHECK(sz == row.size());
    }
    // Trivial cycle ring, row 1 components are (R_1, E, 0).
    RowModule row = RowModule::of_idempotent(r, 0);
    CHECK(row.component(0).size() == 4);
    CHECK(row.component(1).size() == 4);
    CHECK(row.component(2).size() == 1);
}

TEST_CASE("corner rings restrict and compose") {
    FormalRingPtr r = support_pattern_ring(4, {2}, ring_zmod(4));
    std::vector<int> all{0, 1, 2, 3};
    CHECK(corner(r, all)->tables_identical(*r));
    FormalRingPtr single = corner(r, {1});
    CHECK(single->order() == 1);
    CHECK(single->ring(0)->tables_equal(*r->ring(1)));
    // corner(corner(r, I), J) == corner(r, I[J])
    FormalRingPtr c1 = corner(r, {0, 1, 2});
    FormalRingPtr c2 = corner(c1, {0, 2});
    CHECK(c2->tables_identical(*corner(r, {0, 2})));
}

TEST_CASE("central idempotent blocks") {
    CHECK(cycle_z4(3)->central_idempotent_blocks().size() == 1);
    // Block-diagonal product of two local rings: two blocks.
    RingPtr z4 = ring_zmod(4);
    std::vector<BimodulePtr> bims(4);
    bims[1] = FiniteBimodule::zero(z4, z4);
    bims[2] = FiniteBimodule::zero(z4, z4);
    FormalRingPtr prod = trivial_formal_ring({z4, z4}, bims);
    CHECK(prod->central_idempotent_blocks().size() == 2);
    CHECK(as_order_one(z4)->central_idempotent_blocks().size() == 1);
}

TEST_CASE("flatten produces a valid ring agreeing with matrix arithmetic") {
    // Order 1 over Z/4 flattens to Z/4.
    FlattenResult f1 = flatten(as_order_one(ring_zmod(4)));
    CHECK(f1.ring->size() == 4);
    CHECK(f1.ring->tables_equal(*ring_zmod(4)));

    // Order-2 trivial ring over F_2 with both off-diagonals F_2: size 16.
    RingPtr f2 = ring_gf(2);
    std::vector<BimodulePtr> bims(4);
    bims[1] = residue_bimodule(f2, f2, 0);
    bims[2] = residue_bimodule(f2, f2, 0);
    FormalRingPtr r = trivial_formal_ring({f2, f2}, bims);
    FlattenResult f = flatten(r);
    CHECK(f.ring->size() == 16);

    // flatten . build commutes with multiply on 1000 random pairs.
    std::mt19937_64 rng(42);
    for (int t = 0; t < 1000; ++t) {
        long long a = static_cast<long long>(rng() % f.size);
        long long b = static_cast<long long>(rng() % f.size);
        MatrixElement xa = f.element_of(*r, a);
        MatrixElement xb = f.element_of(*r, b);
        CHECK(f.ring->mul(static_cast<Elem>(a), static_cast<Elem>(b)) ==
              static_cast<Elem>(f.index_of(r->mul(xa, xb))));
        CHECK(f.ring->add(static_cast<Elem>(a), static_cast<Elem>(b)) ==
              static_cast<Elem>(f.index_of(r->add(xa, xb))));
    }

    // Size guard.
    Limits::global().flatten_bound = 100;
    bool threw = false;
    try {
        flatten(cycle_z4(3));  // |R| = 4096
    } catch (const SizeLimitExceeded&) {
        threw = true;
    }
    Limits::global().flatten_bound = 65536;
    CHECK(threw);
}

TEST_CASE("opposite ring is an involution and swaps sides") {
    FormalRingPtr r = support_pattern_ring(3, {2}, ring_zmod(4));
    FormalRingPtr op = opposite_ring(r);
    FormalRingPtr opop = opposite_ring(op);
    CHECK(opop->tables_identical(*r));
}

TEST_CASE("basicness: matrix-like rings are rejected, corpus rings accepted") {
    CHECK(cycle_z4(2)->is_basic());
    // M_2(F_2): both bimodules F_2 with field multiplication as products.
    RingPtr f2 = ring_gf(2);
    FormalMatrixRing::Spec spec(2);
    spec.diagonal = {f2, f2};
    spec.bimodules.resize(4);
    spec.bimodules[1] = residue_bimodule(f2, f2, 0);
    spec.bimodules[2] = residue_bimodule(f2, f2, 0);
    spec.product(0, 1, 0) = {0, 0, 0, 1};  // field multiplication tables
    spec.product(1, 0, 1) = {0, 0, 0, 1};
    FormalRingPtr m2 = FormalMatrixRing::build(std::move(spec));
    CHECK(!m2->is_basic());
}
