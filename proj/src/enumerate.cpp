#include "fmr/enumerate.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "fmr/spec_format.hpp"

namespace fmr {

namespace {

// ---------------------------------------------------------------------------
// Small abelian groups with a chosen generating chain (type vector d_1,...,d_k).

struct SmallGroup {
    std::vector<int> type;        // cyclic orders, e.g. {2,2} for the Klein group
    int size = 1;
    std::vector<Elem> add;        // size*size
    std::vector<Elem> gens;       // the canonical generators
    Elem zero = 0;

    Elem at(Elem a, Elem b) const { return add[static_cast<size_t>(a) * size + b]; }
};

SmallGroup make_group(const std::vector<int>& type) {
    SmallGroup g;
    g.type = type;
    g.size = 1;
    for (int d : type) g.size *= d;
    g.add.resize(static_cast<size_t>(g.size) * g.size);
    auto decode = [&](int code, std::vector<int>& v) {
        v.resize(type.size());
        for (size_t t = 0; t < type.size(); ++t) {
            v[t] = code % type[t];
            code /= type[t];
        }
    };
    std::vector<int> va, vb;
    for (Elem a = 0; a < g.size; ++a) {
        decode(a, va);
        for (Elem b = 0; b < g.size; ++b) {
            decode(b, vb);
            int code = 0, mul = 1;
            for (size_t t = 0; t < type.size(); ++t) {
                code += ((va[t] + vb[t]) % type[t]) * mul;
                mul *= type[t];
            }
            g.add[static_cast<size_t>(a) * g.size + b] = code;
        }
    }
    int mul = 1;
    for (size_t t = 0; t < type.size(); ++t) {
        g.gens.push_back(mul);
        mul *= type[t];
    }
    return g;
}

// All abelian groups with 1 < size <= bound (plus the trivial one), one per
// isomorphism type: type vectors d_1 | d_2 | ... with product <= bound.
std::vector<SmallGroup> small_groups(int bound) {
    std::vector<SmallGroup> out;
    out.push_back(make_group({}));  // trivial group, size 1
    std::vector<int> stack;
    std::function<void(int, int)> rec = [&](int produced, int min_d) {
        for (int d = std::max(2, min_d); produced * d <= bound; ++d) {
            if (!stack.empty() && d % stack.back() != 0) continue;  // d_1 | d_2 | ...
            stack.push_back(d);
            out.push_back(make_group(stack));
            rec(produced * d, d);
            stack.pop_back();
        }
    };
    rec(1, 2);
    return out;
}

// Additive endomorphisms of a small group (brute force; carriers <= 4).
std::vector<std::vector<Elem>> additive_endos(const SmallGroup& g) {
    // An endo is determined by generator images; extend and check.
    std::vector<std::vector<Elem>> out;
    const size_t k = g.gens.size();
    std::vector<Elem> images(k, 0);
    auto build = [&]() -> std::optional<std::vector<Elem>> {
        // f(sum c_t g_t) = sum c_t images_t
        std::vector<Elem> f(g.size, -1);
        f[0] = 0;
        std::vector<Elem> codes{0};
        std::vector<Elem> vals{0};
        // enumerate carrier in mixed radix, building incrementally
        std::vector<int> c(k, 0);
        for (Elem code = 0; code < g.size; ++code) {
            int rest = code;
            Elem acc = 0;
            for (size_t t = 0; t < k; ++t) {
                int ct = rest % g.type[t];
                rest /= g.type[t];
                for (int u = 0; u < ct; ++u) acc = g.at(acc, images[t]);
            }
            f[code] = acc;
        }
        // check additivity
        for (Elem a = 0; a < g.size; ++a)
            for (Elem b = 0; b < g.size; ++b)
                if (f[g.at(a, b)] != g.at(f[a], f[b])) return std::nullopt;
        return f;
    };
    std::function<void(size_t)> rec = [&](size_t t) {
        if (t == k) {
            if (auto f = build()) out.push_back(std::move(*f));
            return;
        }
        for (Elem v = 0; v < g.size; ++v) {
            images[t] = v;
            rec(t + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct EndoTable {
    std::vector<std::vector<Elem>> maps;
    std::vector<std::vector<int>> compose;  // compose[f][g] = index of f after g
    int identity = -1;
    int find(const std::vector<Elem>& f) const {
        auto it = std::lower_bound(maps.begin(), maps.end(), f);
        if (it == maps.end() || *it != f) return -1;
        return static_cast<int>(it - maps.begin());
    }
};

EndoTable endo_table(const SmallGroup& g) {
    EndoTable t;
    t.maps = additive_endos(g);
    const int m = static_cast<int>(t.maps.size());
    t.compose.assign(m, std::vector<int>(m, -1));
    std::vector<Elem> comp(g.size);
    for (int f = 0; f < m; ++f)
        for (int h = 0; h < m; ++h) {
            for (Elem x = 0; x < g.size; ++x) comp[x] = t.maps[f][t.maps[h][x]];
            t.compose[f][h] = t.find(comp);
        }
    std::vector<Elem> ident(g.size);
    for (Elem x = 0; x < g.size; ++x) ident[x] = x;
    t.identity = t.find(ident);
    return t;
}

// Unital module structures: maps R -> End(A), additive, with f(1) = id and
// f(rs) = f(r) o f(s) (left) or f(rs) = f(s) o f(r) (right).
std::vector<std::vector<int>> module_structures(const RingPtr& ring, const SmallGroup& g,
                                                const EndoTable& endos, bool left) {
    const FiniteRing& R = *ring;
    const int m = static_cast<int>(endos.maps.size());
    std::vector<std::vector<int>> out;
    std::vector<int> assign(R.size(), -1);
    assign[R.one()] = endos.identity;
    // Zero of the ring must act as the zero endo.
    std::vector<Elem> zmap(g.size, g.zero);
    int zidx = endos.find(zmap);
    assign[R.zero()] = zidx;
    std::function<void(Elem)> rec = [&](Elem r) {
        while (r < R.size() && assign[r] != -1) ++r;
        if (r == R.size()) {
            // verify additivity and multiplicativity fully
            for (Elem a = 0; a < R.size(); ++a)
                for (Elem b = 0; b < R.size(); ++b) {
                    // additive: f(a+b)(x) = f(a)(x) + f(b)(x)
                    const auto& fa = endos.maps[assign[a]];
                    const auto& fb = endos.maps[assign[b]];
                    const auto& fab = endos.maps[assign[R.add(a, b)]];
                    for (Elem x = 0; x < g.size; ++x)
                        if (fab[x] != g.at(fa[x], fb[x])) return;
                    int want = left ? endos.compose[assign[a]][assign[b]]
                                    : endos.compose[assign[b]][assign[a]];
                    if (assign[R.mul(a, b)] != want) return;
                }
            out.push_back(assign);
            return;
        }
        for (int e = 0; e < m; ++e) {
            assign[r] = e;
            rec(r + 1);
        }
        assign[r] = -1;
    };
    rec(0);
    return out;
}

// Biadditive maps B x C -> (R, +) enumerated on generator pairs.
std::vector<std::vector<Elem>> biadditive_maps(const SmallGroup& b, const SmallGroup& c,
                                               const FiniteRing& target) {
    std::vector<std::vector<Elem>> out;
    const size_t kb = b.gens.size(), kc = c.gens.size();
    std::vector<Elem> seed(kb * kc, 0);
    auto build = [&]() -> std::optional<std::vector<Elem>> {
        std::vector<Elem> table(static_cast<size_t>(b.size) * c.size, target.zero());
        // T[x][y] = sum over generator multiplicities of seed values
        for (Elem x = 0; x < b.size; ++x) {
            int restx = x;
            std::vector<int> cx(kb);
            for (size_t t = 0; t < kb; ++t) {
                cx[t] = restx % b.type[t];
                restx /= b.type[t];
            }
            for (Elem y = 0; y < c.size; ++y) {
                int resty = y;
                Elem acc = target.zero();
                for (size_t u = 0; u < kc; ++u) {
                    int cy = resty % c.type[u];
                    resty /= c.type[u];
                    for (size_t t = 0; t < kb; ++t)
                        for (int rep = 0; rep < cx[t] * cy; ++rep)
                            acc = target.add(acc, seed[t * kc + u]);
                }
                table[static_cast<size_t>(x) * c.size + y] = acc;
            }
        }
        for (Elem x = 0; x < b.size; ++x)
            for (Elem x2 = 0; x2 < b.size; ++x2)
                for (Elem y = 0; y < c.size; ++y)
                    if (table[static_cast<size_t>(b.at(x, x2)) * c.size + y] !=
                        target.add(table[static_cast<size_t>(x) * c.size + y],
                                   table[static_cast<size_t>(x2) * c.size + y]))
                        return std::nullopt;
        for (Elem x = 0; x < b.size; ++x)
            for (Elem y = 0; y < c.size; ++y)
                for (Elem y2 = 0; y2 < c.size; ++y2)
                    if (table[static_cast<size_t>(x) * c.size + c.at(y, y2)] !=
                        target.add(table[static_cast<size_t>(x) * c.size + y],
                                   table[static_cast<size_t>(x) * c.size + y2]))
                        return std::nullopt;
        return table;
    };
    std::function<void(size_t)> rec = [&](size_t t) {
        if (t == seed.size()) {
            if (auto tab = build()) out.push_back(std::move(*tab));
            return;
        }
        for (Elem v = 0; v < target.size(); ++v) {
            seed[t] = v;
            rec(t + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

void run_suites_on_ring(const FormalRingPtr& ring, const EnumerationJob& job, Census& census) {
    const int n = ring->order();
    census.rings_checked += 1;

    auto detected = detect_nakayama_direct(ring);
    if (detected) census.with_nakayama += 1;
    census.classifications[detected ? "frobenius" : "no-nakayama"] += 1;

    auto dump = [&](const std::string& kind, const std::string& detail) {
        census.discrepancies.push_back({kind, detail, emit_spec(ring)});
    };

    if (job.check_equivalence) {
        // All permutations of {1..n}: the criterion must pass exactly for the
        // detected permutation.
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        do {
            Permutation pi;
            pi.images = perm;
            bool crit = check_criterion(ring, pi).criterion_pass;
            bool expect = detected && (*detected == pi);
            if (crit != expect)
                dump("criterion-vs-definition",
                     "permutation " + pi.cycle_string() + ": criterion=" +
                         (crit ? "pass" : "fail") + " definition=" + (expect ? "pass" : "fail"));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    if (job.check_essential && detected) {
        CriterionReport rep = check_criterion(ring, *detected);
        bool direct_r = essential_socle_direct(ring, Side::Right);
        bool direct_l = essential_socle_direct(ring, Side::Left);
        if (rep.essential_right_pass != direct_r)
            dump("essential-right", "criterion says " +
                                        std::string(rep.essential_right_pass ? "yes" : "no") +
                                        ", direct says " + (direct_r ? "yes" : "no"));
        if (rep.essential_left_pass != direct_l)
            dump("essential-left", "criterion says " +
                                       std::string(rep.essential_left_pass ? "yes" : "no") +
                                       ", direct says " + (direct_l ? "yes" : "no"));
    }

    if (job.check_lemmas) {
        for (int i = 0; i < n; ++i) {
            RowModule row = RowModule::of_idempotent(ring, i);
            if (row.size() > Limits::global().row_module_bound) continue;
            RowSubmodule lemma = row_socle_of(row);
            RowSubmodule brute = row_socle_brute(row);
            if (!(lemma == brute))
                dump("socle-formula", "row " + std::to_string(i + 1) +
                                          ": coordinatewise socle differs from the brute sum");
        }
        ConditionVerdict rad = radical_containment(ring);
        if (!rad.pass) dump("radical-containment", rad.note);
    }
}

namespace {

void exhaustive_order2(const EnumerationJob& job, Census& census) {
    std::vector<RingPtr> menu;
    for (const auto& name : job.menu) menu.push_back(named_ring(name));
    auto groups = small_groups(job.max_bimodule);
    std::set<uint64_t> seen;

    for (const RingPtr& R1 : menu)
        for (const RingPtr& R2 : menu) {
            // Per-(group, ring) module structures are cached per diagonal pair.
            for (const SmallGroup& A12 : groups)
                for (const SmallGroup& A21 : groups) {
                    EndoTable e12 = endo_table(A12);
                    EndoTable e21 = endo_table(A21);
                    auto l12 = module_structures(R1, A12, e12, true);
                    auto r12 = module_structures(R2, A12, e12, false);
                    auto l21 = module_structures(R2, A21, e21, true);
                    auto r21 = module_structures(R1, A21, e21, false);

                    // Commuting (left, right) pairs -> bimodule structures.
                    struct Bm {
                        BimodulePtr ptr;
                    };
                    std::vector<BimodulePtr> b12s, b21s;
                    auto build_bimodules = [](const RingPtr& L, const RingPtr& Rr,
                                              const SmallGroup& A, const EndoTable& endos,
                                              const std::vector<std::vector<int>>& lefts,
                                              const std::vector<std::vector<int>>& rights) {
                        std::vector<BimodulePtr> out;
                        for (const auto& lf : lefts)
                            for (const auto& rt : rights) {
                                bool commute = true;
                                for (Elem r = 0; r < L->size() && commute; ++r)
                                    for (Elem s = 0; s < Rr->size() && commute; ++s)
                                        if (endos.compose[lf[r]][rt[s]] !=
                                            endos.compose[rt[s]][lf[r]])
                                            commute = false;
                                if (!commute) continue;
                                std::vector<Elem> la(static_cast<size_t>(L->size()) * A.size);
                                std::vector<Elem> ra(static_cast<size_t>(A.size) * Rr->size());
                                for (Elem r = 0; r < L->size(); ++r)
                                    for (Elem m = 0; m < A.size; ++m)
                                        la[static_cast<size_t>(r) * A.size + m] =
                                            endos.maps[lf[r]][m];
                                for (Elem m = 0; m < A.size; ++m)
                                    for (Elem s = 0; s < Rr->size(); ++s)
                                        ra[static_cast<size_t>(m) * Rr->size() + s] =
                                            endos.maps[rt[s]][m];
                                out.push_back(FiniteBimodule::make(L, Rr, A.size, A.add,
                                                                   std::move(la), std::move(ra)));
                            }
                        return out;
                    };
                    b12s = build_bimodules(R1, R2, A12, e12, l12, r12);
                    b21s = build_bimodules(R2, R1, A21, e21, l21, r21);

                    for (const BimodulePtr& B12 : b12s)
                        for (const BimodulePtr& B21 : b21s) {
                            auto p121s = biadditive_maps(A12, A21, *R1);
                            auto p212s = biadditive_maps(A21, A12, *R2);
                            // Filter to bilinear balanced maps before pairing.
                            auto filter = [&](std::vector<std::vector<Elem>>& maps,
                                              const FiniteBimodule& Ba, const FiniteBimodule& Bb,
                                              const RingPtr& left, const RingPtr& middle,
                                              const RingPtr& right) {
                                std::vector<std::vector<Elem>> out;
                                for (auto& t : maps) {
                                    bool ok = true;
                                    const int cb = Bb.size();
                                    for (Elem a = 0; a < Ba.size() && ok; ++a)
                                        for (Elem b = 0; b < cb && ok; ++b) {
                                            Elem v = t[static_cast<size_t>(a) * cb + b];
                                            for (Elem r = 0; r < left->size() && ok; ++r)
                                                if (t[static_cast<size_t>(Ba.lact(r, a)) * cb + b] !=
                                                    left->mul(r, v))
                                                    ok = false;
                                            for (Elem r = 0; r < right->size() && ok; ++r)
                                                if (t[static_cast<size_t>(a) * cb + Bb.ract(b, r)] !=
                                                    right->mul(v, r))
                                                    ok = false;
                                            for (Elem r = 0; r < middle->size() && ok; ++r)
                                                if (t[static_cast<size_t>(Ba.ract(a, r)) * cb + b] !=
                                                    t[static_cast<size_t>(a) * cb + Bb.lact(r, b)])
                                                    ok = false;
                                        }
                                    if (ok) out.push_back(std::move(t));
                                }
                                return out;
                            };
                            p121s = filter(p121s, *B12, *B21, R1, R2, R1);
                            p212s = filter(p212s, *B21, *B12, R2, R1, R2);
                            for (const auto& p121 : p121s)
                                for (const auto& p212 : p212s) {
                                    // Associativity patterns (1,2,1,2) and (2,1,2,1).
                                    bool ok = true;
                                    for (Elem a = 0; a < B12->size() && ok; ++a)
                                        for (Elem b = 0; b < B21->size() && ok; ++b)
                                            for (Elem c = 0; c < B12->size() && ok; ++c) {
                                                Elem ab = p121[static_cast<size_t>(a) * B21->size() + b];
                                                Elem bc = p212[static_cast<size_t>(b) * B12->size() + c];
                                                if (B12->lact(ab, c) != B12->ract(a, bc)) ok = false;
                                            }
                                    for (Elem a = 0; a < B21->size() && ok; ++a)
                                        for (Elem b = 0; b < B12->size() && ok; ++b)
                                            for (Elem c = 0; c < B21->size() && ok; ++c) {
                                                Elem ab = p212[static_cast<size_t>(a) * B12->size() + b];
                                                Elem bc = p121[static_cast<size_t>(b) * B21->size() + c];
                                                if (B21->lact(ab, c) != B21->ract(a, bc)) ok = false;
                                            }
                                    if (!ok) continue;

                                    census.rings_built += 1;
                                    Fnv1a64 h;
                                    uint64_t h1 = R1->content_hash(), h2 = R2->content_hash();
                                    h.feed(&h1, sizeof h1);
                                    h.feed(&h2, sizeof h2);
                                    uint64_t b1 = B12->content_hash(), b2 = B21->content_hash();
                                    h.feed(&b1, sizeof b1);
                                    h.feed(&b2, sizeof b2);
                                    h.feed_vec(p121);
                                    h.feed_vec(p212);
                                    if (!seen.insert(h.state).second) {
                                        census.duplicates += 1;
                                        continue;
                                    }
                                    FormalMatrixRing::Spec spec(2);
                                    spec.diagonal = {R1, R2};
                                    spec.bimodules = {nullptr, B12, B21, nullptr};
                                    spec.product(0, 1, 0) = p121;
                                    spec.product(1, 0, 1) = p212;
                                    FormalRingPtr ring = FormalMatrixRing::build(std::move(spec));
                                    if (!ring->is_basic()) {
                                        census.nonbasic += 1;
                                        continue;
                                    }
                                    run_suites_on_ring(ring, job, census);
                                }
                        }
                }
        }
}

void random_order3(const EnumerationJob& job, Census& census) {
    std::mt19937_64 rng(job.seed);
    std::vector<RingPtr> menu;
    for (const auto& name : job.menu) menu.push_back(named_ring(name));
    if (menu.empty()) return;
    std::set<uint64_t> seen;

    auto pick = [&](size_t bound) { return static_cast<size_t>(rng() % bound); };
    int built = 0;
    int guard = 0;
    while (built < job.count && guard < job.count * 50) {
        ++guard;
        FormalRingPtr ring;
        try {
            switch (pick(4)) {
                case 0: {  // trivial ring with a random bimodule grid
                    FormalMatrixRing::Spec spec(3);
                    for (int i = 0; i < 3; ++i) spec.diagonal[i] = menu[pick(menu.size())];
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) {
                            if (i == j) continue;
                            BimodulePtr& slot = spec.bimodules[static_cast<size_t>(i) * 3 + j];
                            switch (pick(3)) {
                                case 0:
                                    slot = FiniteBimodule::zero(spec.diagonal[i], spec.diagonal[j]);
                                    break;
                                case 1:
                                    slot = residue_bimodule(spec.diagonal[i], spec.diagonal[j], 0);
                                    break;
                                default:
                                    slot = spec.diagonal[i].get() == spec.diagonal[j].get()
                                               ? FiniteBimodule::regular(spec.diagonal[i])
                                               : FiniteBimodule::zero(spec.diagonal[i],
                                                                      spec.diagonal[j]);
                            }
                        }
                    ring = FormalMatrixRing::build(std::move(spec));
                    break;
                }
                case 1: {  // cycle ring
                    RingPtr base = menu[pick(menu.size())];
                    ring = cycle_ring(base, envelope_bimodule(base), 3);
                    break;
                }
                case 2: {  // support pattern over a Frobenius base
                    RingPtr base = menu[pick(menu.size())];
                    std::vector<int> I;
                    if (pick(2)) I.push_back(2);
                    ring = support_pattern_ring(3, I, base);
                    break;
                }
                default: {  // glue an order-2 cycle ring with an order-1 corner
                    RingPtr base = menu[pick(menu.size())];
                    FormalRingPtr left = cycle_ring(base, envelope_bimodule(base), 2);
                    FormalRingPtr right = as_order_one(base);
                    auto res = local_residue(base);
                    CompatibleFieldPair fields =
                        compatible_finite_fields(res->field->size(), 0);
                    ring = glue(make_glue_spec(left, right, fields));
                    break;
                }
            }
        } catch (const Error&) {
            continue;  // sampled combination invalid (e.g. simple fixed corner)
        }
        if (!ring || ring->order() != 3) continue;
        uint64_t h = ring->content_hash();
        census.rings_built += 1;
        if (!seen.insert(h).second) {
            census.duplicates += 1;
            continue;
        }
        if (!ring->is_basic()) {
            census.nonbasic += 1;
            continue;
        }
        run_suites_on_ring(ring, job, census);
        ++built;
    }
}

}  // namespace

Census run_enumeration(const EnumerationJob& job) {
    Census census;
    census.seed = job.seed;
    if (job.menu.empty()) return census;
    if (job.mode == EnumerationJob::Mode::Exhaustive) {
        if (job.order != 2)
            throw SizeLimitExceeded(job.order, 2, "exhaustive enumeration supports order 2");
        exhaustive_order2(job, census);
    } else {
        random_order3(job, census);
    }
    return census;
}

}  // namespace fmr
