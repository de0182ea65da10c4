#include "fmr/module.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace fmr {

namespace {

// Exhaustive law checking up to the configured bound, seeded sampling beyond.
// Calls fn(a, b, c) over the three given ranges.
template <typename Fn>
void for_law_triples(int na, int nb, int nc, Fn&& fn) {
    const Limits& lim = Limits::global();
    const long long total = 1LL * na * nb * nc;
    const long long cap = 1LL * lim.law_exhaustive_bound * lim.law_exhaustive_bound *
                          lim.law_exhaustive_bound;
    if (total <= cap) {
        for (Elem a = 0; a < na; ++a)
            for (Elem b = 0; b < nb; ++b)
                for (Elem c = 0; c < nc; ++c) fn(a, b, c);
    } else {
        std::mt19937_64 rng(0x1a55eedULL ^ (static_cast<uint64_t>(total)));
        std::uniform_int_distribution<Elem> pa(0, na - 1), pb(0, nb - 1), pc(0, nc - 1);
        for (int t = 0; t < lim.law_samples; ++t) fn(pa(rng), pb(rng), pc(rng));
    }
}

void check_abelian(int size, const std::vector<Elem>& add, Elem zero, std::vector<Elem>& neg_out,
                   const char* what) {
    const size_t n = static_cast<size_t>(size);
    if (add.size() != n * n) throw AxiomViolation("totality", {}, std::string(what) + ": add table size");
    for (Elem v : add)
        if (v < 0 || v >= size)
            throw AxiomViolation("totality", {v}, std::string(what) + ": add entry out of range");
    for (Elem a = 0; a < size; ++a) {
        if (add[static_cast<size_t>(a) * size + zero] != a)
            throw AxiomViolation("add-identity", {a}, std::string(what) + ": zero not neutral");
    }
    neg_out.assign(n, -1);
    for (Elem a = 0; a < size; ++a)
        for (Elem b = 0; b < size; ++b) {
            if (add[static_cast<size_t>(a) * size + b] != add[static_cast<size_t>(b) * size + a])
                throw AxiomViolation("add-commutativity", {a, b}, what);
            if (add[static_cast<size_t>(a) * size + b] == zero && neg_out[a] < 0) neg_out[a] = b;
        }
    for (Elem a = 0; a < size; ++a)
        if (neg_out[a] < 0)
            throw AxiomViolation("add-inverse", {a}, std::string(what) + ": missing inverse");
    for_law_triples(size, size, size, [&](Elem a, Elem b, Elem c) {
        Elem ab = add[static_cast<size_t>(a) * size + b];
        Elem bc = add[static_cast<size_t>(b) * size + c];
        if (add[static_cast<size_t>(ab) * size + c] != add[static_cast<size_t>(a) * size + bc])
            throw AxiomViolation("add-associativity", {a, b, c}, what);
    });
}

}  // namespace

FiniteModule FiniteModule::make(RingPtr ring, Side side, int size, std::vector<Elem> add,
                                std::vector<Elem> act) {
    FiniteModule m;
    m.ring_ = std::move(ring);
    m.side_ = side;
    m.size_ = size;
    const FiniteRing& R = *m.ring_;
    // Locate zero: the unique additive identity.
    Elem zero = -1;
    for (Elem z = 0; z < size && zero < 0; ++z) {
        bool ok = true;
        for (Elem a = 0; a < size && ok; ++a)
            if (add[static_cast<size_t>(a) * size + z] != a) ok = false;
        if (ok) zero = z;
    }
    if (zero < 0) throw AxiomViolation("add-identity", {}, "module without additive identity");
    m.zero_ = zero;
    check_abelian(size, add, zero, m.neg_, "module");
    m.add_ = std::move(add);

    if (act.size() != static_cast<size_t>(size) * R.size())
        throw AxiomViolation("totality", {}, "module action table size");
    for (Elem v : act)
        if (v < 0 || v >= size) throw AxiomViolation("totality", {v}, "action entry out of range");
    m.act_ = std::move(act);

    for (Elem x = 0; x < size; ++x)
        if (m.act(x, R.one()) != x) throw AxiomViolation("action-unital", {x}, "m*1 != m");
    for_law_triples(size, size, R.size(), [&](Elem x, Elem y, Elem r) {
        if (m.act(m.add(x, y), r) != m.add(m.act(x, r), m.act(y, r)))
            throw AxiomViolation("action-additive", {x, y, r}, "(m+n)r != mr+nr");
    });
    for_law_triples(size, R.size(), R.size(), [&](Elem x, Elem r, Elem s) {
        if (m.act(x, R.add(r, s)) != m.add(m.act(x, r), m.act(x, s)))
            throw AxiomViolation("action-additive", {x, r, s}, "m(r+s) != mr+ms");
        // Right modules: (m*r)*s == m*(rs).  Left modules store act(m,r)=r*m,
        // so associativity reads act(act(m,s),r) == act(m, rs).
        Elem lhs = side == Side::Right ? m.act(m.act(x, r), s) : m.act(m.act(x, s), r);
        if (lhs != m.act(x, R.mul(r, s)))
            throw AxiomViolation("action-associative", {x, r, s}, "action not associative");
    });
    return m;
}

FiniteModule FiniteModule::regular(RingPtr ring, Side side) {
    const FiniteRing& R = *ring;
    const int n = R.size();
    std::vector<Elem> act(static_cast<size_t>(n) * n);
    for (Elem m = 0; m < n; ++m)
        for (Elem r = 0; r < n; ++r)
            act[static_cast<size_t>(m) * n + r] = side == Side::Right ? R.mul(m, r) : R.mul(r, m);
    return make(ring, side, n, R.add_table(), std::move(act));
}

FiniteModule FiniteModule::zero(RingPtr ring, Side side) {
    std::vector<Elem> add{0};
    std::vector<Elem> act(static_cast<size_t>(ring->size()), 0);
    return make(std::move(ring), side, 1, std::move(add), std::move(act));
}

int FiniteModule::add_order(Elem a) const {
    int ord = 1;
    Elem cur = a;
    while (cur != zero_) {
        cur = add(cur, a);
        ++ord;
    }
    return ord;
}

int FiniteModule::add_exponent() const {
    int e = 1;
    for (Elem a = 0; a < size_; ++a) e = std::lcm(e, add_order(a));
    return e;
}

BimodulePtr FiniteBimodule::make(RingPtr left, RingPtr right, int size, std::vector<Elem> add,
                                 std::vector<Elem> left_action, std::vector<Elem> right_action) {
    auto bm = std::shared_ptr<FiniteBimodule>(new FiniteBimodule());
    FiniteBimodule& B = *bm;
    B.left_ = std::move(left);
    B.right_ = std::move(right);
    B.size_ = size;
    Elem zero = -1;
    for (Elem z = 0; z < size && zero < 0; ++z) {
        bool ok = true;
        for (Elem a = 0; a < size && ok; ++a)
            if (add[static_cast<size_t>(a) * size + z] != a) ok = false;
        if (ok) zero = z;
    }
    if (zero < 0) throw AxiomViolation("add-identity", {}, "bimodule without additive identity");
    B.zero_ = zero;
    check_abelian(size, add, zero, B.neg_, "bimodule");
    B.add_ = std::move(add);

    const FiniteRing& L = *B.left_;
    const FiniteRing& R = *B.right_;
    if (left_action.size() != static_cast<size_t>(L.size()) * size ||
        right_action.size() != static_cast<size_t>(size) * R.size())
        throw AxiomViolation("totality", {}, "bimodule action table size");
    for (Elem v : left_action)
        if (v < 0 || v >= size) throw AxiomViolation("totality", {v}, "left action out of range");
    for (Elem v : right_action)
        if (v < 0 || v >= size) throw AxiomViolation("totality", {v}, "right action out of range");
    B.lact_ = std::move(left_action);
    B.ract_ = std::move(right_action);

    for (Elem m = 0; m < size; ++m) {
        if (B.lact(L.one(), m) != m) throw AxiomViolation("action-unital", {m}, "1*m != m");
        if (B.ract(m, R.one()) != m) throw AxiomViolation("action-unital", {m}, "m*1 != m");
    }
    for_law_triples(L.size(), size, size, [&](Elem r, Elem m, Elem m2) {
        if (B.lact(r, B.add(m, m2)) != B.add(B.lact(r, m), B.lact(r, m2)))
            throw AxiomViolation("action-additive", {r, m, m2}, "r(m+n) != rm+rn");
    });
    for_law_triples(L.size(), L.size(), size, [&](Elem r, Elem r2, Elem m) {
        if (B.lact(L.add(r, r2), m) != B.add(B.lact(r, m), B.lact(r2, m)))
            throw AxiomViolation("action-additive", {r, r2, m}, "(r+r')m != rm+r'm");
        if (B.lact(L.mul(r, r2), m) != B.lact(r, B.lact(r2, m)))
            throw AxiomViolation("action-associative", {r, r2, m}, "(rr')m != r(r'm)");
    });
    for_law_triples(size, size, R.size(), [&](Elem m, Elem m2, Elem s) {
        if (B.ract(B.add(m, m2), s) != B.add(B.ract(m, s), B.ract(m2, s)))
            throw AxiomViolation("action-additive", {m, m2, s}, "(m+n)s != ms+ns");
    });
    for_law_triples(size, R.size(), R.size(), [&](Elem m, Elem s, Elem s2) {
        if (B.ract(m, R.add(s, s2)) != B.add(B.ract(m, s), B.ract(m, s2)))
            throw AxiomViolation("action-additive", {m, s, s2}, "m(s+s') != ms+ms'");
        if (B.ract(m, R.mul(s, s2)) != B.ract(B.ract(m, s), s2))
            throw AxiomViolation("action-associative", {m, s, s2}, "m(ss') != (ms)s'");
    });
    for_law_triples(L.size(), size, R.size(), [&](Elem r, Elem m, Elem s) {
        if (B.ract(B.lact(r, m), s) != B.lact(r, B.ract(m, s)))
            throw AxiomViolation("actions-commute", {r, m, s}, "(rm)s != r(ms)");
    });

    Fnv1a64 h;
    h.feed_i32(size);
    h.feed_vec(B.add_);
    h.feed_vec(B.lact_);
    h.feed_vec(B.ract_);
    B.hash_ = h.state;
    return bm;
}

BimodulePtr FiniteBimodule::zero(RingPtr left, RingPtr right) {
    std::vector<Elem> add{0};
    std::vector<Elem> la(static_cast<size_t>(left->size()), 0);
    std::vector<Elem> ra(static_cast<size_t>(right->size()), 0);
    return make(std::move(left), std::move(right), 1, std::move(add), std::move(la), std::move(ra));
}

BimodulePtr FiniteBimodule::regular(RingPtr ring) {
    const FiniteRing& R = *ring;
    const int n = R.size();
    std::vector<Elem> la(static_cast<size_t>(n) * n), ra(static_cast<size_t>(n) * n);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            la[static_cast<size_t>(a) * n + b] = R.mul(a, b);
            ra[static_cast<size_t>(a) * n + b] = R.mul(a, b);
        }
    return make(ring, ring, n, R.add_table(), std::move(la), std::move(ra));
}

BimodulePtr FiniteBimodule::twisted(const BimodulePtr& base, const std::vector<Elem>& left_auto,
                                    const std::vector<Elem>& right_auto) {
    const FiniteBimodule& B = *base;
    const int ls = B.left_ring()->size(), rs = B.right_ring()->size();
    std::vector<Elem> la(static_cast<size_t>(ls) * B.size()), ra(static_cast<size_t>(B.size()) * rs);
    for (Elem r = 0; r < ls; ++r)
        for (Elem m = 0; m < B.size(); ++m)
            la[static_cast<size_t>(r) * B.size() + m] =
                B.lact(left_auto.empty() ? r : left_auto[r], m);
    for (Elem m = 0; m < B.size(); ++m)
        for (Elem r = 0; r < rs; ++r)
            ra[static_cast<size_t>(m) * rs + r] = B.ract(m, right_auto.empty() ? r : right_auto[r]);
    return make(B.left_ring(), B.right_ring(), B.size(), B.add_table(), std::move(la),
                std::move(ra));
}

FiniteModule FiniteBimodule::right_module() const {
    return FiniteModule::make(right_, Side::Right, size_, add_, ract_);
}

FiniteModule FiniteBimodule::left_module() const {
    const int ls = left_->size();
    std::vector<Elem> act(static_cast<size_t>(size_) * ls);
    for (Elem m = 0; m < size_; ++m)
        for (Elem r = 0; r < ls; ++r) act[static_cast<size_t>(m) * ls + r] = lact(r, m);
    return FiniteModule::make(left_, Side::Left, size_, add_, std::move(act));
}

bool FiniteBimodule::tables_equal(const FiniteBimodule& other) const {
    return size_ == other.size_ && add_ == other.add_ && lact_ == other.lact_ &&
           ract_ == other.ract_;
}

SubmoduleSet SubmoduleSet::of(std::vector<Elem> elements, int ambient_size, Side side) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    SubmoduleSet s;
    s.mask.assign(ambient_size, 0);
    for (Elem e : elements) s.mask[e] = 1;
    s.elems = std::move(elements);
    s.side = side;
    return s;
}

std::vector<Elem> additive_closure(const FiniteModule& m, std::span<const Elem> gens) {
    std::vector<char> seen(m.size(), 0);
    std::vector<Elem> work{m.zero_elem()};
    seen[m.zero_elem()] = 1;
    for (Elem g : gens)
        if (!seen[g]) {
            seen[g] = 1;
            work.push_back(g);
        }
    for (size_t t = 0; t < work.size(); ++t)
        for (size_t u = 0; u <= t; ++u) {
            Elem s = m.add(work[t], work[u]);
            if (!seen[s]) {
                seen[s] = 1;
                work.push_back(s);
            }
        }
    std::sort(work.begin(), work.end());
    return work;
}

SubmoduleSet submodule_closure(const FiniteModule& m, std::span<const Elem> gens) {
    const FiniteRing& R = *m.ring();
    std::vector<char> seen(m.size(), 0);
    std::vector<Elem> work{m.zero_elem()};
    seen[m.zero_elem()] = 1;
    auto push = [&](Elem x) {
        if (!seen[x]) {
            seen[x] = 1;
            work.push_back(x);
        }
    };
    for (Elem g : gens) push(g);
    for (size_t t = 0; t < work.size(); ++t) {
        for (size_t u = 0; u <= t; ++u) push(m.add(work[t], work[u]));
        for (Elem r = 0; r < R.size(); ++r) push(m.act(work[t], r));
    }
    return SubmoduleSet::of(std::move(work), m.size(), m.side());
}

std::vector<Elem> cyclic_submodule(const FiniteModule& m, Elem x) {
    // For a unital ring, {x*r : r in R} is already a submodule.
    std::vector<char> seen(m.size(), 0);
    std::vector<Elem> out;
    for (Elem r = 0; r < m.ring()->size(); ++r) {
        Elem y = m.act(x, r);
        if (!seen[y]) {
            seen[y] = 1;
            out.push_back(y);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace fmr
