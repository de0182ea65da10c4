#include "fmr/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fmr {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// q = p^e for prime p; returns {p, e} or nullopt.
std::optional<std::pair<int, int>> prime_power(int q) {
    if (q < 2) return std::nullopt;
    for (int p = 2; p <= q; ++p) {
        if (!is_prime(p)) continue;
        if (q % p) continue;
        int e = 0, t = q;
        while (t % p == 0) {
            t /= p;
            ++e;
        }
        if (t == 1) return std::make_pair(p, e);
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

RingPtr ring_zmod(int n) {
    std::vector<Elem> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
    std::vector<std::string> labels(n);
    for (int a = 0; a < n; ++a) {
        labels[a] = std::to_string(a);
        for (int b = 0; b < n; ++b) {
            add[static_cast<size_t>(a) * n + b] = (a + b) % n;
            mul[static_cast<size_t>(a) * n + b] = (a * b) % n;
        }
    }
    return FiniteRing::make(n, std::move(add), std::move(mul), 0, n > 1 ? 1 : 0,
                            std::move(labels), "Z/" + std::to_string(n));
}

namespace {

// Dense polynomial arithmetic over F_p for the GF construction.
using Poly = std::vector<int>;  // coefficients, constant term first

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& modulus, int p) {
    Poly prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    // Reduce modulo the monic modulus.
    const int deg = static_cast<int>(modulus.size()) - 1;
    for (int d = static_cast<int>(prod.size()) - 1; d >= deg; --d) {
        int c = prod[d];
        if (c == 0) continue;
        for (int t = 0; t <= deg; ++t) {
            int idx = d - deg + t;
            prod[idx] = ((prod[idx] - c * modulus[t]) % p + p) % p;
        }
    }
    prod.resize(deg);
    return prod;
}

bool poly_is_zero(const Poly& a) {
    for (int c : a)
        if (c) return false;
    return true;
}

// Trial division by all monic polynomials of degree 1..deg/2.
bool poly_irreducible(const Poly& f, int p) {
    const int deg = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= deg; ++d) {
        // All monic candidates of degree d.
        int count = 1;
        for (int t = 0; t < d; ++t) count *= p;
        for (int code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            int c = code;
            for (int t = 0; t < d; ++t) {
                g[t] = c % p;
                c /= p;
            }
            g[d] = 1;
            // Remainder of f by g.
            Poly rem = f;
            for (int e = static_cast<int>(rem.size()) - 1; e >= d; --e) {
                int lead = rem[e];
                if (lead == 0) continue;
                for (int t = 0; t <= d; ++t) {
                    int idx = e - d + t;
                    rem[idx] = ((rem[idx] - lead * g[t]) % p + p) % p;
                }
            }
            rem.resize(d);
            if (poly_is_zero(rem)) return false;
        }
    }
    return true;
}

std::string poly_label(const Poly& a) {
    std::ostringstream os;
    bool first = true;
    for (int d = static_cast<int>(a.size()) - 1; d >= 0; --d) {
        if (a[d] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (d == 0 || a[d] != 1) os << a[d];
        if (d >= 1) {
            os << "x";
            if (d > 1) os << "^" << d;
        }
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace

RingPtr ring_gf(int q) {
    auto pe = prime_power(q);
    if (!pe)
        throw UnresolvedReference("GF(" + std::to_string(q) + ")",
                                  "GF(" + std::to_string(q) + "): not a prime power");
    const int p = pe->first, e = pe->second;
    if (e == 1) {
        auto zp = ring_zmod(p);
        // Same tables, field name.
        return FiniteRing::make(p, zp->add_table(), zp->mul_table(), 0, 1, {},
                                "GF(" + std::to_string(q) + ")");
    }
    // Least irreducible monic polynomial of degree e.
    Poly modulus;
    int count = 1;
    for (int t = 0; t < e; ++t) count *= p;
    for (int code = 0; code < count && modulus.empty(); ++code) {
        Poly f(e + 1, 0);
        int c = code;
        for (int t = 0; t < e; ++t) {
            f[t] = c % p;
            c /= p;
        }
        f[e] = 1;
        if (poly_irreducible(f, p)) modulus = f;
    }
    if (modulus.empty()) throw InternalCheckFailed("no irreducible polynomial found");

    auto decode = [&](int code) {
        Poly a(e, 0);
        for (int t = 0; t < e; ++t) {
            a[t] = code % p;
            code /= p;
        }
        return a;
    };
    auto encode = [&](const Poly& a) {
        int code = 0, mul = 1;
        for (int t = 0; t < e; ++t) {
            code += a[t] * mul;
            mul *= p;
        }
        return code;
    };
    std::vector<Elem> add(static_cast<size_t>(q) * q), mul(static_cast<size_t>(q) * q);
    std::vector<std::string> labels(q);
    for (int a = 0; a < q; ++a) {
        Poly pa = decode(a);
        labels[a] = poly_label(pa);
        for (int b = 0; b < q; ++b) {
            Poly pb = decode(b);
            Poly sum(e, 0);
            for (int t = 0; t < e; ++t) sum[t] = (pa[t] + pb[t]) % p;
            add[static_cast<size_t>(a) * q + b] = encode(sum);
            mul[static_cast<size_t>(a) * q + b] = encode(poly_mul_mod(pa, pb, modulus, p));
        }
    }
    return FiniteRing::make(q, std::move(add), std::move(mul), 0, 1, std::move(labels),
                            "GF(" + std::to_string(q) + ")");
}

RingPtr trivial_extension(const RingPtr& base, const BimodulePtr& bimodule) {
    const FiniteRing& K = *base;
    const FiniteBimodule& M = *bimodule;
    const int n = K.size() * M.size();
    auto code = [&](Elem a, Elem m) { return a * M.size() + m; };
    std::vector<Elem> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
    std::vector<std::string> labels(n);
    for (Elem a = 0; a < K.size(); ++a)
        for (Elem m = 0; m < M.size(); ++m) {
            labels[code(a, m)] = "(" + (K.label(a).empty() ? std::to_string(a) : K.label(a)) +
                                 "|" + std::to_string(m) + ")";
            for (Elem b = 0; b < K.size(); ++b)
                for (Elem mn = 0; mn < M.size(); ++mn) {
                    add[static_cast<size_t>(code(a, m)) * n + code(b, mn)] =
                        code(K.add(a, b), M.add(m, mn));
                    mul[static_cast<size_t>(code(a, m)) * n + code(b, mn)] =
                        code(K.mul(a, b), M.add(M.lact(a, mn), M.ract(m, b)));
                }
        }
    return FiniteRing::make(n, std::move(add), std::move(mul), code(K.zero(), M.zero_elem()),
                            code(K.one(), M.zero_elem()), std::move(labels),
                            "trivext(" + (K.name().empty() ? "?" : K.name()) + ")");
}

RingPtr trivial_extension(const RingPtr& base) {
    return trivial_extension(base, FiniteBimodule::regular(base));
}

RingPtr ring_two_var_nil(int q) {
    RingPtr F = ring_gf(q);
    const int fq = F->size();
    const int n = fq * fq * fq;  // a + b x + c y
    auto code = [&](Elem a, Elem b, Elem c) { return (a * fq + b) * fq + c; };
    std::vector<Elem> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
    for (Elem a = 0; a < fq; ++a)
        for (Elem b = 0; b < fq; ++b)
            for (Elem c = 0; c < fq; ++c)
                for (Elem a2 = 0; a2 < fq; ++a2)
                    for (Elem b2 = 0; b2 < fq; ++b2)
                        for (Elem c2 = 0; c2 < fq; ++c2) {
                            add[static_cast<size_t>(code(a, b, c)) * n + code(a2, b2, c2)] =
                                code(F->add(a, a2), F->add(b, b2), F->add(c, c2));
                            mul[static_cast<size_t>(code(a, b, c)) * n + code(a2, b2, c2)] =
                                code(F->mul(a, a2),
                                     F->add(F->mul(a, b2), F->mul(b, a2)),
                                     F->add(F->mul(a, c2), F->mul(c, a2)));
                        }
    return FiniteRing::make(n, std::move(add), std::move(mul), code(0, 0, 0),
                            code(F->one(), 0, 0), {},
                            "GF(" + std::to_string(q) + ")[x,y]/(x2,xy,y2)");
}

RingPtr named_ring(const std::string& name) {
    if (name.rfind("Z/", 0) == 0) {
        try {
            size_t used = 0;
            int n = std::stoi(name.substr(2), &used);
            if (used == name.size() - 2 && n >= 1) return ring_zmod(n);
        } catch (...) {
        }
        throw UnresolvedReference(name, "malformed ring name '" + name + "'");
    }
    if (name.rfind("GF(", 0) == 0 && name.back() == ')') {
        int q = 0;
        try {
            q = std::stoi(name.substr(3, name.size() - 4));
        } catch (...) {
            throw UnresolvedReference(name, "malformed ring name '" + name + "'");
        }
        return ring_gf(q);
    }
    if (name.rfind("trivext(", 0) == 0 && name.back() == ')') {
        RingPtr inner = named_ring(name.substr(8, name.size() - 9));
        return trivial_extension(inner);
    }
    throw UnresolvedReference(name, "unknown ring generator '" + name + "'");
}

int ring_characteristic(const FiniteRing& ring) { return ring.add_order(ring.one()); }

std::vector<Elem> frobenius_map(const FiniteRing& field) {
    const int p = ring_characteristic(field);
    std::vector<Elem> images(field.size());
    for (Elem x = 0; x < field.size(); ++x) {
        Elem acc = field.one();
        for (int t = 0; t < p; ++t) acc = field.mul(acc, x);
        images[x] = acc;
    }
    return images;
}

BimodulePtr residue_bimodule(const RingPtr& left, const RingPtr& right, int twist) {
    auto res_l = local_residue(left);
    auto res_r = local_residue(right);
    if (!res_l || !res_r)
        throw UnresolvedReference("residue", "residue bimodule requires local rings");
    const FiniteRing& K = *res_l->field;
    auto iso = ring_isomorphism(*res_r->field, K);
    if (!iso)
        throw UnresolvedReference("residue",
                                  "residue fields are not isomorphic; no residue bimodule");
    // tau = frob^twist after the canonical iso.
    std::vector<Elem> tau = *iso;
    if (twist) {
        auto frob = frobenius_map(K);
        for (int t = 0; t < twist; ++t)
            for (auto& v : tau) v = frob[v];
    }
    const int size = K.size();
    std::vector<Elem> la(static_cast<size_t>(left->size()) * size);
    std::vector<Elem> ra(static_cast<size_t>(size) * right->size());
    for (Elem r = 0; r < left->size(); ++r)
        for (Elem m = 0; m < size; ++m)
            la[static_cast<size_t>(r) * size + m] = K.mul(res_l->proj[r], m);
    for (Elem m = 0; m < size; ++m)
        for (Elem r = 0; r < right->size(); ++r)
            ra[static_cast<size_t>(m) * right->size() + r] = K.mul(m, tau[res_r->proj[r]]);
    return FiniteBimodule::make(left, right, size, K.add_table(), std::move(la), std::move(ra));
}

FormalRingPtr as_order_one(const RingPtr& local_ring) {
    FormalMatrixRing::Spec spec(1);
    spec.diagonal[0] = local_ring;
    return FormalMatrixRing::build(std::move(spec));
}

BimodulePtr envelope_bimodule(const RingPtr& local_ring) {
    const FiniteRing& S = *local_ring;
    if (!S.is_local()) throw BadEnvelope("envelope base must be local");
    FiniteModule regular = FiniteModule::regular(local_ring, Side::Right);
    if (is_injective(regular)) return FiniteBimodule::regular(local_ring);
    // Non-self-injective: realize the envelope inside the character module.
    for (Elem a = 0; a < S.size(); ++a)
        for (Elem b = 0; b < S.size(); ++b)
            if (S.mul(a, b) != S.mul(b, a))
                throw BadEnvelope("default envelope needs a commutative or self-injective base");
    SubmoduleSet soc = socle(regular);
    Elem gen = -1;
    for (Elem x : soc.elems)
        if (x != S.zero()) {
            gen = x;
            break;
        }
    if (gen < 0) throw BadEnvelope("base ring has zero socle");
    auto simple_set = submodule_closure(regular, std::vector<Elem>{gen});
    auto simple = restrict_module(regular, simple_set);
    EnvelopeResult env = injective_envelope(simple.mod);
    // The envelope lives inside the character module, which is a bimodule; for
    // a commutative base the subset is closed on both sides.
    BimodulePtr cm = character_module(local_ring);
    const auto& set = env.image_in_ambient;
    std::vector<Elem> to_sub(cm->size(), -1);
    for (size_t t = 0; t < set.elems.size(); ++t) to_sub[set.elems[t]] = static_cast<Elem>(t);
    const int size = set.size();
    std::vector<Elem> add(static_cast<size_t>(size) * size);
    std::vector<Elem> la(static_cast<size_t>(S.size()) * size), ra(static_cast<size_t>(size) * S.size());
    for (int a = 0; a < size; ++a) {
        for (int b = 0; b < size; ++b) {
            Elem v = cm->add(set.elems[a], set.elems[b]);
            add[static_cast<size_t>(a) * size + b] = to_sub[v];
        }
        for (Elem r = 0; r < S.size(); ++r) {
            Elem lv = cm->lact(r, set.elems[a]);
            Elem rv = cm->ract(set.elems[a], r);
            if (to_sub[lv] < 0 || to_sub[rv] < 0)
                throw BadEnvelope("envelope subset is not a sub-bimodule");
            la[static_cast<size_t>(r) * size + a] = to_sub[lv];
            ra[static_cast<size_t>(a) * S.size() + r] = to_sub[rv];
        }
    }
    return FiniteBimodule::make(local_ring, local_ring, size, std::move(add), std::move(la),
                                std::move(ra));
}

namespace {

void require_simple_essential_socle(const BimodulePtr& E) {
    FiniteModule right = E->right_module();
    SubmoduleSet rsoc = socle(right);
    if (!is_simple_subset(rsoc, right))
        throw BadEnvelope("coordinate bimodule: right socle is not simple");
    std::vector<Elem> whole(E->size());
    for (Elem x = 0; x < E->size(); ++x) whole[x] = x;
    if (!is_essential_in_subset(rsoc, SubmoduleSet::of(whole, E->size(), Side::Right), right))
        throw BadEnvelope("coordinate bimodule: right socle is not essential");
    FiniteModule left = E->left_module();
    SubmoduleSet lsoc = socle(left);
    if (!is_simple_subset(lsoc, left))
        throw BadEnvelope("coordinate bimodule: left socle is not simple");
    if (!is_essential_in_subset(lsoc, SubmoduleSet::of(whole, E->size(), Side::Left), left))
        throw BadEnvelope("coordinate bimodule: left socle is not essential");
}

}  // namespace

FormalRingPtr cycle_ring(const RingPtr& base, const BimodulePtr& envelope, int n) {
    if (!base->is_local()) throw NotLocal(1, "cycle ring base must be local");
    if (envelope->left_ring().get() != base.get() || envelope->right_ring().get() != base.get())
        throw BadEnvelope("envelope must be a bimodule over the base ring");
    require_simple_essential_socle(envelope);
    FormalMatrixRing::Spec spec(n);
    for (int i = 0; i < n; ++i) spec.diagonal[i] = base;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            spec.bimodules[static_cast<size_t>(i) * n + j] =
                j == (i + 1) % n ? envelope : FiniteBimodule::zero(base, base);
        }
    return FormalMatrixRing::build(std::move(spec));
}

FormalRingPtr support_pattern_ring(int n, const std::vector<int>& shifts, const RingPtr& base) {
    const FiniteRing& S = *base;
    if (!S.is_local()) throw NotLocal(1, "support pattern base must be local");
    for (int k : shifts)
        if (k < 2 || k > n - 1)
            throw AxiomViolation("shift", {k}, "shifts must lie in {2..n-1}");
    BimodulePtr E = FiniteBimodule::regular(base);
    require_simple_essential_socle(E);  // base must be Frobenius local
    auto res = local_residue(base);
    const FiniteRing& M = *res->field;

    // Socle embedding m -> soc(S): emb(k) = t * sec(k) for the least generator
    // t that is central over residues and killed by J on both sides.
    FiniteModule regular = FiniteModule::regular(base, Side::Right);
    SubmoduleSet soc = socle(regular);
    Elem gen = -1;
    std::vector<Elem> emb(M.size(), -1);
    for (Elem t : soc.elems) {
        if (t == S.zero()) continue;
        bool ok = true;
        for (Elem j : S.jacobson_radical())
            if (S.mul(j, t) != S.zero()) ok = false;
        std::vector<char> hit(S.size(), 0);
        std::vector<Elem> candidate(M.size());
        for (Elem k = 0; k < M.size() && ok; ++k) {
            Elem v = S.mul(t, res->section[k]);
            Elem v2 = S.mul(res->section[k], t);
            if (v != v2 || !soc.contains(v) || hit[v]) ok = false;
            hit[v] = 1;
            candidate[k] = v;
        }
        if (ok && static_cast<int>(soc.elems.size()) == M.size()) {
            gen = t;
            emb = std::move(candidate);
            break;
        }
    }
    if (gen < 0) throw BadEnvelope("no residue-central socle generator; base not Frobenius?");

    BimodulePtr resbim = residue_bimodule(base, base, 0);

    FormalMatrixRing::Spec spec(n);
    for (int i = 0; i < n; ++i) spec.diagonal[i] = base;
    auto slot = [&](int i, int j) -> BimodulePtr& {
        return spec.bimodules[static_cast<size_t>(i) * n + j];
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) slot(i, j) = FiniteBimodule::zero(base, base);
    for (int i = 0; i < n; ++i) slot(i, (i + 1) % n) = E;
    auto mod = [&](int v) { return ((v % n) + n) % n; };
    for (int k : shifts)
        for (int j = 0; j < n; ++j) {
            slot(j, mod(j + k)) = resbim;
            slot(j, mod(j - k + 1)) = resbim;
        }
    // Pairing products: residues multiply into the socle of E.
    for (int k : shifts)
        for (int i = 0; i < n; ++i) {
            for (int variant = 0; variant < 2; ++variant) {
                const int j = variant == 0 ? mod(i + k) : mod(i - k + 1);
                const int target = mod(i + 1);
                if (slot(i, j).get() != resbim.get() || slot(j, target).get() != resbim.get())
                    continue;  // slot overridden by the pairing diagonal (small n)
                auto& table = spec.product(i, j, target);
                table.assign(static_cast<size_t>(M.size()) * M.size(), 0);
                for (Elem a = 0; a < M.size(); ++a)
                    for (Elem b = 0; b < M.size(); ++b)
                        table[static_cast<size_t>(a) * M.size() + b] = emb[M.mul(a, b)];
            }
        }
    return FormalMatrixRing::build(std::move(spec));
}

FormalRingPtr serial_quiver_algebra(int q, int n, int bound) {
    if (n < 1 || bound < 1) throw AxiomViolation("quiver", {}, "need n >= 1 and bound >= 1");
    RingPtr F = ring_gf(q);
    const int fq = F->size();

    // Path lengths from i to j: t in [0, bound) with t = (i - j) mod n.
    auto lengths = [&](int i, int j) {
        std::vector<int> out;
        for (int t = 0; t < bound; ++t)
            if (((i - j) % n + n) % n == t % n) out.push_back(t);
        return out;
    };
    struct Cell {
        std::vector<int> lens;
        std::vector<int> len_index;  // length -> basis position or -1
        int dim = 0;
        long long size = 1;
    };
    std::vector<Cell> cells(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Cell& c = cells[static_cast<size_t>(i) * n + j];
            c.lens = lengths(i, j);
            c.dim = static_cast<int>(c.lens.size());
            c.len_index.assign(bound, -1);
            for (int t = 0; t < c.dim; ++t) c.len_index[c.lens[t]] = t;
            c.size = 1;
            for (int t = 0; t < c.dim; ++t) c.size *= fq;
        }
    auto decode = [&](const Cell& c, long long code, std::vector<Elem>& coeff) {
        coeff.assign(c.dim, 0);
        for (int t = 0; t < c.dim; ++t) {
            coeff[t] = static_cast<Elem>(code % fq);
            code /= fq;
        }
    };
    auto encode = [&](const Cell& c, const std::vector<Elem>& coeff) {
        long long code = 0, mul = 1;
        for (int t = 0; t < c.dim; ++t) {
            code += coeff[t] * mul;
            mul *= fq;
        }
        return code;
    };
    // Structure-constant product between two cells.
    auto cell_product = [&](const Cell& a, const Cell& b, const Cell& target, long long ca,
                            long long cb) {
        std::vector<Elem> va, vb, out(target.dim, 0);
        decode(a, ca, va);
        decode(b, cb, vb);
        for (int s = 0; s < a.dim; ++s) {
            if (!va[s]) continue;
            for (int t = 0; t < b.dim; ++t) {
                if (!vb[t]) continue;
                int len = a.lens[s] + b.lens[t];
                if (len >= bound) continue;
                int pos = target.len_index[len];
                if (pos < 0) throw InternalCheckFailed("path length leaves the target cell");
                out[pos] = F->add(out[pos], F->mul(va[s], vb[t]));
            }
        }
        return encode(target, out);
    };

    // Diagonal rings.
    std::vector<RingPtr> diag(n);
    for (int i = 0; i < n; ++i) {
        const Cell& c = cells[static_cast<size_t>(i) * n + i];
        const int size = static_cast<int>(c.size);
        std::vector<Elem> add(static_cast<size_t>(size) * size), mul(static_cast<size_t>(size) * size);
        std::vector<Elem> va, vb, sum;
        for (int a = 0; a < size; ++a)
            for (int b = 0; b < size; ++b) {
                decode(c, a, va);
                decode(c, b, vb);
                sum.assign(c.dim, 0);
                for (int t = 0; t < c.dim; ++t) sum[t] = F->add(va[t], vb[t]);
                add[static_cast<size_t>(a) * size + b] = static_cast<Elem>(encode(c, sum));
                mul[static_cast<size_t>(a) * size + b] =
                    static_cast<Elem>(cell_product(c, c, c, a, b));
            }
        std::vector<Elem> one(c.dim, 0);
        one[c.len_index[0]] = F->one();
        diag[i] = FiniteRing::make(size, std::move(add), std::move(mul), 0,
                                   static_cast<Elem>(encode(c, one)), {},
                                   "path-vertex-" + std::to_string(i + 1));
    }

    FormalMatrixRing::Spec spec(n);
    spec.diagonal = diag;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const Cell& c = cells[static_cast<size_t>(i) * n + j];
            const Cell& ci = cells[static_cast<size_t>(i) * n + i];
            const Cell& cj = cells[static_cast<size_t>(j) * n + j];
            const int size = static_cast<int>(c.size);
            std::vector<Elem> add(static_cast<size_t>(size) * size);
            std::vector<Elem> va, vb, sum;
            for (int a = 0; a < size; ++a)
                for (int b = 0; b < size; ++b) {
                    decode(c, a, va);
                    decode(c, b, vb);
                    sum.assign(c.dim, 0);
                    for (int t = 0; t < c.dim; ++t) sum[t] = F->add(va[t], vb[t]);
                    add[static_cast<size_t>(a) * size + b] = static_cast<Elem>(encode(c, sum));
                }
            std::vector<Elem> la(static_cast<size_t>(diag[i]->size()) * size);
            std::vector<Elem> ra(static_cast<size_t>(size) * diag[j]->size());
            for (Elem r = 0; r < diag[i]->size(); ++r)
                for (Elem m = 0; m < size; ++m)
                    la[static_cast<size_t>(r) * size + m] =
                        static_cast<Elem>(cell_product(ci, c, c, r, m));
            for (Elem m = 0; m < size; ++m)
                for (Elem r = 0; r < diag[j]->size(); ++r)
                    ra[static_cast<size_t>(m) * diag[j]->size() + r] =
                        static_cast<Elem>(cell_product(c, cj, c, m, r));
            spec.bimodules[static_cast<size_t>(i) * n + j] = FiniteBimodule::make(
                diag[i], diag[j], size, std::move(add), std::move(la), std::move(ra));
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k) continue;
                const Cell& a = cells[static_cast<size_t>(i) * n + j];
                const Cell& b = cells[static_cast<size_t>(j) * n + k];
                const Cell& t = cells[static_cast<size_t>(i) * n + k];
                std::vector<Elem> table(static_cast<size_t>(a.size) * b.size);
                for (long long x = 0; x < a.size; ++x)
                    for (long long y = 0; y < b.size; ++y)
                        table[static_cast<size_t>(x) * b.size + y] =
                            static_cast<Elem>(cell_product(a, b, t, x, y));
                spec.product(i, j, k) = std::move(table);
            }
    return FormalMatrixRing::build(std::move(spec));
}

Permutation concatenate(const Permutation& sigma, const Permutation& sigma_prime) {
    Permutation pi;
    pi.images.resize(sigma.n() + sigma_prime.n());
    for (int i = 0; i < sigma.n(); ++i) pi.images[i] = sigma(i);
    for (int j = 0; j < sigma_prime.n(); ++j) pi.images[sigma.n() + j] = sigma.n() + sigma_prime(j);
    return pi;
}

CompatibleFieldPair compatible_finite_fields(int q, int twist) {
    CompatibleFieldPair pair;
    pair.K = ring_gf(q);
    pair.L = pair.K;
    const FiniteRing& K = *pair.K;
    std::vector<Elem> ident(K.size());
    for (Elem x = 0; x < K.size(); ++x) ident[x] = x;
    auto frob = frobenius_map(K);
    pair.kl_embed = ident;
    for (int t = 0; t < twist; ++t)
        for (auto& v : pair.kl_embed) v = frob[v];
    // The inverse twist on the other side, so the two embeddings are mutually
    // inverse field isomorphisms.
    pair.lk_embed.assign(K.size(), -1);
    for (Elem x = 0; x < K.size(); ++x) pair.lk_embed[pair.kl_embed[x]] = x;
    return pair;
}

namespace {

struct SideWitness {
    std::vector<std::vector<Elem>> residue_to_field;  // alpha_i
    std::vector<std::vector<Elem>> socle_embed;       // emb_i: field -> B_{i,sigma(i)}
};

// Checks (A)/(C)/(D) for one ring against one field; `letter` is "" for the
// left ring and "'" for the right one.
SideWitness check_side(const FormalRingPtr& Sp, const Permutation& sigma, const RingPtr& field,
                       const std::string& prime) {
    const FormalMatrixRing& S = *Sp;
    const FiniteRing& K = *field;
    const int n = S.order();
    SideWitness w;
    w.residue_to_field.resize(n);
    w.socle_embed.resize(n);

    // (D): fixed points must have non-simple corners.
    for (int i = 0; i < n; ++i)
        if (sigma(i) == i && S.ring(i)->jacobson_radical().size() == 1)
            throw AssumptionFailed("D" + prime, "corner " + std::to_string(i + 1),
                                   "condition (D" + prime + "): local corner " +
                                       std::to_string(i + 1) + " is simple");

    // (A): all residue fields isomorphic to the fixed field.
    std::vector<ResidueField> residues;
    for (int i = 0; i < n; ++i) {
        auto res = local_residue(S.ring(i));
        if (!res) throw NotLocal(i + 1, "corner not local");
        if (!ring_isomorphism(*res->field, K))
            throw AssumptionFailed("A" + prime, "corner " + std::to_string(i + 1),
                                   "condition (A" + prime + "): residue field of corner " +
                                       std::to_string(i + 1) + " is not isomorphic to the glue field");
        residues.push_back(std::move(*res));
    }

    // (C): socles of pairing bimodules coincide and are isomorphic to the
    // field as bimodules; realized by propagating the residue identifications
    // along each cycle and checking that they close up.
    std::vector<std::vector<Elem>> phi(n);  // residue iso m_i -> m_{sigma(i)}
    for (int i = 0; i < n; ++i) {
        try {
            ResidueFieldIso iso = residue_field_iso(Sp, i, sigma);
            phi[i] = iso.images;
        } catch (const SoclesDiffer&) {
            throw AssumptionFailed("C" + prime, "corner " + std::to_string(i + 1),
                                   "condition (C" + prime +
                                       "): left and right socles of the pairing bimodule differ");
        }
    }
    for (const auto& cyc : sigma.cycles()) {
        // alpha at the cycle start: canonical iso to the field.
        auto alpha0 = ring_isomorphism(*residues[cyc[0]].field, K);
        std::vector<std::vector<Elem>> alphas(cyc.size());
        alphas[0] = *alpha0;
        // alpha_{sigma(i)} = alpha_i o phi_i^{-1}.
        for (size_t t = 0; t + 1 < cyc.size(); ++t) {
            const auto& ph = phi[cyc[t]];
            std::vector<Elem> inv(ph.size());
            for (size_t x = 0; x < ph.size(); ++x) inv[ph[x]] = static_cast<Elem>(x);
            alphas[t + 1].resize(ph.size());
            for (size_t x = 0; x < ph.size(); ++x) alphas[t + 1][x] = alphas[t][inv[x]];
        }
        // Closure: alpha at start must equal alpha_last o phi_last^{-1}.
        {
            const auto& ph = phi[cyc.back()];
            std::vector<Elem> inv(ph.size());
            for (size_t x = 0; x < ph.size(); ++x) inv[ph[x]] = static_cast<Elem>(x);
            for (size_t x = 0; x < ph.size(); ++x)
                if (alphas[0][x] != alphas.back()[inv[x]])
                    throw AssumptionFailed(
                        "C" + prime, "cycle at corner " + std::to_string(cyc[0] + 1),
                        "condition (C" + prime + "): residue identifications do not close up "
                        "around the cycle (twisted socle bimodule)");
        }
        for (size_t t = 0; t < cyc.size(); ++t) w.residue_to_field[cyc[t]] = alphas[t];
    }

    // Socle embeddings emb_i(x) = m_i * sec(alpha_{sigma(i)}^{-1}(x)), with m_i
    // the least nonzero element of T'_i (the left socle of N'_i).
    for (int i = 0; i < n; ++i) {
        const int p = sigma(i);
        const FiniteBimodule& B = *S.bimodule(i, p);
        std::vector<Elem> T;
        for (Elem m = 0; m < B.size(); ++m) {
            bool killed = true;
            for (int h = 0; h < n && killed; ++h) {
                if (h == i) continue;
                const FiniteBimodule& Bhi = *S.bimodule(h, i);
                for (Elem b = 0; b < Bhi.size() && killed; ++b)
                    if (S.prod(h, i, p, b, m) != S.bimodule(h, p)->zero_elem()) killed = false;
            }
            if (!killed) continue;
            bool soc = true;
            for (Elem j : S.ring(i)->jacobson_radical())
                if (B.lact(j, m) != B.zero_elem()) {
                    soc = false;
                    break;
                }
            if (soc) T.push_back(m);
        }
        Elem gen = -1;
        for (Elem x : T)
            if (x != B.zero_elem()) {
                gen = x;
                break;
            }
        if (gen < 0)
            throw AssumptionFailed("C" + prime, "corner " + std::to_string(i + 1),
                                   "condition (C" + prime + "): zero socle in pairing bimodule");
        const auto& alpha_p = w.residue_to_field[p];
        std::vector<Elem> alpha_p_inv(alpha_p.size());
        for (size_t x = 0; x < alpha_p.size(); ++x) alpha_p_inv[alpha_p[x]] = static_cast<Elem>(x);
        std::vector<Elem> emb(K.size());
        for (Elem x = 0; x < K.size(); ++x)
            emb[x] = B.ract(gen, residues[p].section[alpha_p_inv[x]]);
        // emb must be a bimodule map: emb(alpha_i(kbar) * x) = sec(kbar) * emb(x).
        const auto& alpha_i = w.residue_to_field[i];
        for (Elem k = 0; k < static_cast<Elem>(alpha_i.size()); ++k)
            for (Elem x = 0; x < K.size(); ++x) {
                Elem via_field = emb[K.mul(alpha_i[k], x)];
                Elem via_ring = B.lact(residues[i].section[k], emb[x]);
                if (via_field != via_ring)
                    throw AssumptionFailed("C" + prime, "corner " + std::to_string(i + 1),
                                           "condition (C" + prime +
                                               "): socle embedding is not a bimodule map");
            }
        w.socle_embed[i] = std::move(emb);
    }
    return w;
}

}  // namespace

GlueSpec make_glue_spec(const FormalRingPtr& S, const FormalRingPtr& S_prime,
                        const CompatibleFieldPair& fields) {
    GlueSpec spec;
    spec.left_ring = S;
    spec.right_ring = S_prime;
    spec.fields = fields;

    auto sigma = detect_nakayama_direct(S);
    if (!sigma) throw PrerequisiteFailed("left ring has no Nakayama permutation");
    auto sigma_p = detect_nakayama_direct(S_prime);
    if (!sigma_p) throw PrerequisiteFailed("right ring has no Nakayama permutation");
    spec.sigma = *sigma;
    spec.sigma_prime = *sigma_p;

    // (B): the declared embeddings must be injective ring homomorphisms.
    const FiniteRing& K = *fields.K;
    const FiniteRing& L = *fields.L;
    auto check_embed = [&](const FiniteRing& from, const FiniteRing& to,
                           const std::vector<Elem>& map) {
        if (map.size() != static_cast<size_t>(from.size())) return false;
        std::vector<char> hit(to.size(), 0);
        for (Elem x = 0; x < from.size(); ++x) {
            if (map[x] < 0 || map[x] >= to.size() || hit[map[x]]) return false;
            hit[map[x]] = 1;
        }
        if (map[from.one()] != to.one()) return false;
        for (Elem a = 0; a < from.size(); ++a)
            for (Elem b = 0; b < from.size(); ++b) {
                if (map[from.add(a, b)] != to.add(map[a], map[b])) return false;
                if (map[from.mul(a, b)] != to.mul(map[a], map[b])) return false;
            }
        return true;
    };
    if (K.size() != L.size() || !check_embed(L, K, fields.kl_embed) ||
        !check_embed(K, L, fields.lk_embed))
        throw AssumptionFailed("B", "fields",
                               "condition (B): the two fields are not compatible (no mutual "
                               "embeddings)");

    SideWitness left = check_side(S, spec.sigma, fields.K, "");
    SideWitness right = check_side(S_prime, spec.sigma_prime, fields.L, "'");
    spec.left_residue_to_K = std::move(left.residue_to_field);
    spec.left_socle_embed = std::move(left.socle_embed);
    spec.right_residue_to_L = std::move(right.residue_to_field);
    spec.right_socle_embed = std::move(right.socle_embed);
    return spec;
}

namespace {

// Cross bimodule: the field carrier with the left action through one ring's
// residue identification and the right action through the other's, twisted by
// the compatibility embedding.
BimodulePtr cross_bimodule(const RingPtr& left_corner, const RingPtr& right_corner,
                           const RingPtr& field, const std::vector<Elem>& alpha_left,
                           const std::vector<Elem>& alpha_right,
                           const std::vector<Elem>& embed_right) {
    const FiniteRing& K = *field;
    auto res_l = local_residue(left_corner);
    auto res_r = local_residue(right_corner);
    std::vector<Elem> la(static_cast<size_t>(left_corner->size()) * K.size());
    std::vector<Elem> ra(static_cast<size_t>(K.size()) * right_corner->size());
    for (Elem r = 0; r < left_corner->size(); ++r)
        for (Elem m = 0; m < K.size(); ++m)
            la[static_cast<size_t>(r) * K.size() + m] = K.mul(alpha_left[res_l->proj[r]], m);
    for (Elem m = 0; m < K.size(); ++m)
        for (Elem r = 0; r < right_corner->size(); ++r)
            ra[static_cast<size_t>(m) * right_corner->size() + r] =
                K.mul(m, embed_right[alpha_right[res_r->proj[r]]]);
    return FiniteBimodule::make(left_corner, right_corner, K.size(), K.add_table(), std::move(la),
                                std::move(ra));
}

FormalRingPtr glue_with_corners(const GlueSpec& spec, const std::vector<int>& I,
                                const std::vector<int>& J) {
    const FormalMatrixRing& S = *spec.left_ring;
    const FormalMatrixRing& Sp = *spec.right_ring;
    const int n = S.order(), np = Sp.order();
    const int N = n + np;
    std::vector<char> inI(n, 0), inJ(np, 0);
    for (int i : I) inI[i] = 1;
    for (int j : J) inJ[j] = 1;

    FormalMatrixRing::Spec out(N);
    for (int i = 0; i < n; ++i) out.diagonal[i] = S.ring(i);
    for (int j = 0; j < np; ++j) out.diagonal[n + j] = Sp.ring(j);

    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            if (a == b) continue;
            BimodulePtr& slot = out.bimodules[static_cast<size_t>(a) * N + b];
            if (a < n && b < n) {
                slot = S.bimodule(a, b);
            } else if (a >= n && b >= n) {
                slot = Sp.bimodule(a - n, b - n);
            } else if (a < n) {
                // K between glued corners, zero elsewhere.
                slot = (inI[a] && inJ[b - n])
                           ? cross_bimodule(S.ring(a), Sp.ring(b - n), spec.fields.K,
                                            spec.left_residue_to_K[a],
                                            spec.right_residue_to_L[b - n], spec.fields.kl_embed)
                           : FiniteBimodule::zero(S.ring(a), Sp.ring(b - n));
            } else {
                slot = (inJ[a - n] && inI[b])
                           ? cross_bimodule(Sp.ring(a - n), S.ring(b), spec.fields.L,
                                            spec.right_residue_to_L[a - n],
                                            spec.left_residue_to_K[b], spec.fields.lk_embed)
                           : FiniteBimodule::zero(Sp.ring(a - n), S.ring(b));
            }
        }

    // Products inside the diagonal blocks are inherited.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (a == b || b == c) continue;
                const int sab = S.bimodule(a, b)->size(), sbc = S.bimodule(b, c)->size();
                std::vector<Elem> t(static_cast<size_t>(sab) * sbc);
                for (Elem x = 0; x < sab; ++x)
                    for (Elem y = 0; y < sbc; ++y)
                        t[static_cast<size_t>(x) * sbc + y] = S.prod(a, b, c, x, y);
                out.product(a, b, c) = std::move(t);
            }
    for (int a = 0; a < np; ++a)
        for (int b = 0; b < np; ++b)
            for (int c = 0; c < np; ++c) {
                if (a == b || b == c) continue;
                const int sab = Sp.bimodule(a, b)->size(), sbc = Sp.bimodule(b, c)->size();
                std::vector<Elem> t(static_cast<size_t>(sab) * sbc);
                for (Elem x = 0; x < sab; ++x)
                    for (Elem y = 0; y < sbc; ++y)
                        t[static_cast<size_t>(x) * sbc + y] = Sp.prod(a, b, c, x, y);
                out.product(n + a, n + b, n + c) = std::move(t);
            }

    // New pairing products: phi_{i, n+j, sigma(i)}(x, y) = emb_i(x * kl(y)) and
    // phi_{n+j, i, n+sigma'(j)}(y, x) = emb'_j(y * lk(x)); everything else new
    // stays zero.
    const FiniteRing& K = *spec.fields.K;
    const FiniteRing& L = *spec.fields.L;
    for (int i : I)
        for (int j : J) {
            {
                std::vector<Elem> t(static_cast<size_t>(K.size()) * L.size());
                for (Elem x = 0; x < K.size(); ++x)
                    for (Elem y = 0; y < L.size(); ++y)
                        t[static_cast<size_t>(x) * L.size() + y] =
                            spec.left_socle_embed[i][K.mul(x, spec.fields.kl_embed[y])];
                out.product(i, n + j, spec.sigma(i)) = std::move(t);
            }
            {
                std::vector<Elem> t(static_cast<size_t>(L.size()) * K.size());
                for (Elem y = 0; y < L.size(); ++y)
                    for (Elem x = 0; x < K.size(); ++x)
                        t[static_cast<size_t>(y) * K.size() + x] =
                            spec.right_socle_embed[j][L.mul(y, spec.fields.lk_embed[x])];
                out.product(n + j, i, n + spec.sigma_prime(j)) = std::move(t);
            }
        }
    return FormalMatrixRing::build(std::move(out));
}

}  // namespace

FormalRingPtr glue(const GlueSpec& spec) {
    std::vector<int> I(spec.left_ring->order()), J(spec.right_ring->order());
    std::iota(I.begin(), I.end(), 0);
    std::iota(J.begin(), J.end(), 0);
    return glue_with_corners(spec, I, J);
}

FormalRingPtr glue_general(const FormalRingPtr& S, const FormalRingPtr& S_prime,
                           const std::vector<int>& I, const std::vector<int>& J,
                           const CompatibleFieldPair& fields) {
    auto sigma = detect_nakayama_direct(S);
    if (!sigma) throw PrerequisiteFailed("left ring has no Nakayama permutation");
    auto sigma_p = detect_nakayama_direct(S_prime);
    if (!sigma_p) throw PrerequisiteFailed("right ring has no Nakayama permutation");
    auto check_cycle_union = [](const Permutation& p, const std::vector<int>& set, const char* side) {
        std::vector<char> in(p.n(), 0);
        for (int i : set) {
            if (i < 0 || i >= p.n()) throw PrerequisiteFailed("corner index out of range");
            in[i] = 1;
        }
        for (int i : set)
            if (!in[p(i)])
                throw PrerequisiteFailed(std::string(side) +
                                         " corner index set is not a union of cycles");
    };
    check_cycle_union(*sigma, I, "left");
    check_cycle_union(*sigma_p, J, "right");

    // The corners must satisfy the glueing assumptions; their witnesses are
    // computed corner-locally and transported back to the full index sets.
    FormalRingPtr cS = corner(S, I);
    FormalRingPtr cSp = corner(S_prime, J);
    GlueSpec corner_spec = make_glue_spec(cS, cSp, fields);

    GlueSpec full;
    full.left_ring = S;
    full.right_ring = S_prime;
    full.sigma = *sigma;
    full.sigma_prime = *sigma_p;
    full.fields = fields;
    full.left_residue_to_K.resize(S->order());
    full.left_socle_embed.resize(S->order());
    full.right_residue_to_L.resize(S_prime->order());
    full.right_socle_embed.resize(S_prime->order());
    for (size_t t = 0; t < I.size(); ++t) {
        full.left_residue_to_K[I[t]] = corner_spec.left_residue_to_K[t];
        full.left_socle_embed[I[t]] = corner_spec.left_socle_embed[t];
    }
    for (size_t t = 0; t < J.size(); ++t) {
        full.right_residue_to_L[J[t]] = corner_spec.right_residue_to_L[t];
        full.right_socle_embed[J[t]] = corner_spec.right_socle_embed[t];
    }
    return glue_with_corners(full, I, J);
}

}  // namespace fmr
