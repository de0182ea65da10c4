#include "fmr/algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

namespace fmr {

SubmoduleSet socle(const FiniteModule& m) {
    const auto& J = m.ring()->jacobson_radical();
    std::vector<Elem> out;
    for (Elem x = 0; x < m.size(); ++x) {
        bool killed = true;
        for (Elem j : J)
            if (m.act(x, j) != m.zero_elem()) {
                killed = false;
                break;
            }
        if (killed) out.push_back(x);
    }
    auto s = SubmoduleSet::of(std::move(out), m.size(), m.side());
    if (m.size() <= Limits::global().socle_oracle_bound) {
        if (!(s == socle_brute(m)))
            throw InternalCheckFailed("socle: ann(J) disagrees with simple-submodule sum");
    }
    return s;
}

SubmoduleSet socle_brute(const FiniteModule& m) {
    if (m.size() > Limits::global().socle_oracle_bound * 64)
        throw SizeLimitExceeded(m.size(), Limits::global().socle_oracle_bound * 64,
                                "socle_brute carrier bound");
    // Collect cyclic submodules, keep the simple ones, sum them.
    std::vector<std::vector<Elem>> cyclics(m.size());
    for (Elem x = 0; x < m.size(); ++x) cyclics[x] = cyclic_submodule(m, x);
    std::vector<Elem> gens;
    for (Elem x = 0; x < m.size(); ++x) {
        if (x == m.zero_elem()) continue;
        const auto& c = cyclics[x];
        if (c.size() <= 1) continue;
        bool simple = true;
        for (Elem y : c) {
            if (y == m.zero_elem()) continue;
            if (cyclics[y] != c) {
                simple = false;
                break;
            }
        }
        if (simple) gens.insert(gens.end(), c.begin(), c.end());
    }
    FiniteModule copy = m;  // additive closure needs only the group structure
    auto closed = additive_closure(copy, gens);
    return SubmoduleSet::of(std::move(closed), m.size(), m.side());
}

QuotientModule quotient_module(const FiniteModule& m, const SubmoduleSet& n) {
    const int size = m.size();
    // Coset representative = least element of x + N.
    std::vector<Elem> rep(size);
    for (Elem x = 0; x < size; ++x) {
        Elem best = x;
        for (Elem u : n.elems) best = std::min(best, m.add(x, u));
        rep[x] = best;
    }
    std::vector<Elem> reps;
    for (Elem x = 0; x < size; ++x)
        if (rep[x] == x) reps.push_back(x);
    std::vector<Elem> index_of(size, -1);
    for (size_t t = 0; t < reps.size(); ++t) index_of[reps[t]] = static_cast<Elem>(t);

    const int q = static_cast<int>(reps.size());
    const int rs = m.ring()->size();
    std::vector<Elem> add(static_cast<size_t>(q) * q), act(static_cast<size_t>(q) * rs);
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b)
            add[static_cast<size_t>(a) * q + b] = index_of[rep[m.add(reps[a], reps[b])]];
        for (Elem r = 0; r < rs; ++r)
            act[static_cast<size_t>(a) * rs + r] = index_of[rep[m.act(reps[a], r)]];
    }
    QuotientModule out{FiniteModule::make(m.ring(), m.side(), q, std::move(add), std::move(act)),
                       ModuleMap{}};
    out.proj.source_size = size;
    out.proj.target_size = q;
    out.proj.side = m.side();
    out.proj.images.resize(size);
    for (Elem x = 0; x < size; ++x) out.proj.images[x] = index_of[rep[x]];
    return out;
}

SubmoduleSet radical_submodule(const FiniteModule& m) {
    const auto& J = m.ring()->jacobson_radical();
    std::vector<Elem> gens;
    for (Elem x = 0; x < m.size(); ++x)
        for (Elem j : J) gens.push_back(m.act(x, j));
    FiniteModule copy = m;
    auto closed = additive_closure(copy, gens);
    return SubmoduleSet::of(std::move(closed), m.size(), m.side());
}

QuotientModule top(const FiniteModule& m) { return quotient_module(m, radical_submodule(m)); }

bool is_essential(const SubmoduleSet& n, const FiniteModule& m) {
    // Verify N <= M first: closed under addition and action.
    for (Elem a : n.elems) {
        for (Elem b : n.elems)
            if (!n.contains(m.add(a, b)))
                throw InternalCheckFailed("is_essential: N not closed under addition");
        for (Elem r = 0; r < m.ring()->size(); ++r)
            if (!n.contains(m.act(a, r)))
                throw InternalCheckFailed("is_essential: N not closed under action");
    }
    for (Elem x = 0; x < m.size(); ++x) {
        if (x == m.zero_elem()) continue;
        bool meets = false;
        for (Elem r = 0; r < m.ring()->size() && !meets; ++r) {
            Elem y = m.act(x, r);
            if (y != m.zero_elem() && n.contains(y)) meets = true;
        }
        if (!meets) return false;
    }
    return true;
}

bool is_essential_in_subset(const SubmoduleSet& t, const SubmoduleSet& inside,
                            const FiniteModule& ambient) {
    for (Elem x : inside.elems) {
        if (x == ambient.zero_elem()) continue;
        bool meets = false;
        for (Elem r = 0; r < ambient.ring()->size() && !meets; ++r) {
            Elem y = ambient.act(x, r);
            if (y != ambient.zero_elem() && t.contains(y)) meets = true;
        }
        if (!meets) return false;
    }
    return true;
}

bool is_simple(const FiniteModule& m) {
    if (m.size() <= 1) return false;
    for (Elem x = 0; x < m.size(); ++x) {
        if (x == m.zero_elem()) continue;
        if (static_cast<int>(cyclic_submodule(m, x).size()) != m.size()) return false;
    }
    return true;
}

bool is_simple_subset(const SubmoduleSet& s, const FiniteModule& ambient) {
    if (s.size() <= 1) return false;
    for (Elem x : s.elems) {
        if (x == ambient.zero_elem()) continue;
        std::vector<char> seen(ambient.size(), 0);
        int count = 0;
        for (Elem r = 0; r < ambient.ring()->size(); ++r) {
            Elem y = ambient.act(x, r);
            if (!seen[y]) {
                seen[y] = 1;
                if (!s.contains(y)) return false;  // not even a submodule of s
                ++count;
            }
        }
        if (count != s.size()) return false;
    }
    return true;
}

std::vector<Elem> annihilator(const FiniteModule& m) {
    std::vector<Elem> out;
    for (Elem r = 0; r < m.ring()->size(); ++r) {
        bool kills = true;
        for (Elem x = 0; x < m.size() && kills; ++x)
            if (m.act(x, r) != m.zero_elem()) kills = false;
        if (kills) out.push_back(r);
    }
    return out;
}

RestrictedModule restrict_module(const FiniteModule& m, const SubmoduleSet& s) {
    RestrictedModule out;
    out.to_ambient = s.elems;
    out.from_ambient.assign(m.size(), -1);
    for (size_t t = 0; t < s.elems.size(); ++t)
        out.from_ambient[s.elems[t]] = static_cast<Elem>(t);
    const int q = s.size();
    const int rs = m.ring()->size();
    std::vector<Elem> add(static_cast<size_t>(q) * q), act(static_cast<size_t>(q) * rs);
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            Elem v = m.add(s.elems[a], s.elems[b]);
            if (out.from_ambient[v] < 0)
                throw InternalCheckFailed("restrict_module: set not closed under addition");
            add[static_cast<size_t>(a) * q + b] = out.from_ambient[v];
        }
        for (Elem r = 0; r < rs; ++r) {
            Elem v = m.act(s.elems[a], r);
            if (out.from_ambient[v] < 0)
                throw InternalCheckFailed("restrict_module: set not closed under action");
            act[static_cast<size_t>(a) * rs + r] = out.from_ambient[v];
        }
    }
    out.mod = FiniteModule::make(m.ring(), m.side(), q, std::move(add), std::move(act));
    return out;
}

std::vector<std::vector<int>> additive_characters(const FiniteModule& m) {
    const int n = m.size();
    const int e = m.add_exponent();
    // Chain of cyclic extensions: each level adjoins one generator g of order d
    // modulo the previous subgroup; every new element has a unique form k*g + s.
    struct Level {
        Elem gen;
        int d;
        Elem dg;  // d*gen, lies in the previous subgroup
        std::vector<std::tuple<Elem, int, Elem>> added;  // (element, k, s)
    };
    std::vector<Level> levels;
    {
        std::vector<char> in(n, 0);
        in[m.zero_elem()] = 1;
        std::vector<Elem> sub{m.zero_elem()};
        while (static_cast<int>(sub.size()) < n) {
            Elem g = -1;
            for (Elem x = 0; x < n; ++x)
                if (!in[x]) {
                    g = x;
                    break;
                }
            Level L;
            L.gen = g;
            Elem cur = g;
            int d = 1;
            while (!in[cur]) {
                cur = m.add(cur, g);
                ++d;
            }
            L.d = d;
            L.dg = cur;
            std::vector<Elem> base = sub;
            Elem kg = m.zero_elem();
            for (int k = 1; k < d; ++k) {
                kg = m.add(kg, g);
                for (Elem s : base) {
                    Elem v = m.add(kg, s);
                    if (in[v]) throw InternalCheckFailed("coset decomposition not disjoint");
                    in[v] = 1;
                    L.added.emplace_back(v, k, s);
                    sub.push_back(v);
                }
            }
            levels.push_back(std::move(L));
        }
    }

    std::vector<std::vector<int>> result;
    std::vector<int> values(n, -1);
    values[m.zero_elem()] = 0;
    std::function<void(size_t)> rec = [&](size_t level) {
        if (level == levels.size()) {
            result.push_back(values);
            return;
        }
        const Level& L = levels[level];
        const long long target = values[L.dg];
        for (int v = 0; v < e; ++v) {
            if (((static_cast<long long>(L.d) * v - target) % e + e) % e != 0) continue;
            for (const auto& [x, k, s] : L.added)
                values[x] = static_cast<int>((static_cast<long long>(k) * v + values[s]) % e);
            rec(level + 1);
            for (const auto& [x, k, s] : L.added) values[x] = -1;
        }
    };
    rec(0);
    std::sort(result.begin(), result.end());
    return result;
}

BimodulePtr character_module(const RingPtr& ring) {
    const FiniteRing& R = *ring;
    const int n = R.size();
    FiniteModule add_group = FiniteModule::regular(ring, Side::Right);
    auto chars = additive_characters(add_group);
    if (static_cast<int>(chars.size()) != n)
        throw InternalCheckFailed("character count != carrier size");
    const int e = R.add_exponent();

    std::map<std::vector<int>, Elem> index;
    for (size_t t = 0; t < chars.size(); ++t) index[chars[t]] = static_cast<Elem>(t);

    std::vector<Elem> add(static_cast<size_t>(n) * n), la(static_cast<size_t>(n) * n),
        ra(static_cast<size_t>(n) * n);
    std::vector<int> tmp(n);
    for (int f = 0; f < n; ++f) {
        for (int g = 0; g < n; ++g) {
            for (int x = 0; x < n; ++x) tmp[x] = (chars[f][x] + chars[g][x]) % e;
            add[static_cast<size_t>(f) * n + g] = index.at(tmp);
        }
        for (Elem r = 0; r < n; ++r) {
            // (f*r)(x) = f(r x)
            for (Elem x = 0; x < n; ++x) tmp[x] = chars[f][R.mul(r, x)];
            ra[static_cast<size_t>(f) * n + r] = index.at(tmp);
            // (r*f)(x) = f(x r)
            for (Elem x = 0; x < n; ++x) tmp[x] = chars[f][R.mul(x, r)];
            la[static_cast<size_t>(r) * n + f] = index.at(tmp);
        }
    }
    return FiniteBimodule::make(ring, ring, n, std::move(add), std::move(la), std::move(ra));
}

namespace {

// Greedy essential-extension closure of X inside the ambient module.
// Returns the closure (X itself when no proper essential extension exists).
SubmoduleSet essential_closure(const FiniteModule& ambient, SubmoduleSet x) {
    bool grew = true;
    while (grew) {
        grew = false;
        for (Elem cand = 0; cand < ambient.size(); ++cand) {
            if (x.contains(cand)) continue;
            // Necessary condition before the expensive closure: cand*R meets X.
            bool meets = false;
            for (Elem r = 0; r < ambient.ring()->size() && !meets; ++r) {
                Elem z = ambient.act(cand, r);
                if (z != ambient.zero_elem() && x.contains(z)) meets = true;
            }
            if (!meets) continue;
            std::vector<Elem> gens = x.elems;
            gens.push_back(cand);
            SubmoduleSet bigger = submodule_closure(ambient, gens);
            // X essential in bigger?
            bool essential = true;
            for (Elem y : bigger.elems) {
                if (y == ambient.zero_elem()) continue;
                bool meets = false;
                for (Elem r = 0; r < ambient.ring()->size() && !meets; ++r) {
                    Elem z = ambient.act(y, r);
                    if (z != ambient.zero_elem() && x.contains(z)) meets = true;
                }
                if (!meets) {
                    essential = false;
                    break;
                }
            }
            if (essential) {
                x = std::move(bigger);
                grew = true;
                break;
            }
        }
    }
    return x;
}

}  // namespace

EnvelopeResult injective_envelope(const FiniteModule& simple) {
    if (!is_simple(simple)) throw BadEnvelope("injective_envelope requires a simple module");
    if (simple.side() != Side::Right)
        throw BadEnvelope("injective_envelope implemented for right modules");
    const RingPtr& ring = simple.ring();
    BimodulePtr cm = character_module(ring);
    FiniteModule C = cm->right_module();

    // T = t*R for any nonzero t; embed by matching annihilators.
    Elem t = simple.zero_elem() == 0 ? 1 : 0;
    std::vector<char> ann_t(ring->size(), 0);
    for (Elem r = 0; r < ring->size(); ++r) ann_t[r] = simple.act(t, r) == simple.zero_elem();
    Elem image = -1;
    for (Elem c = 0; c < C.size() && image < 0; ++c) {
        if (c == C.zero_elem()) continue;
        bool match = true;
        for (Elem r = 0; r < ring->size() && match; ++r)
            if (ann_t[r] != (C.act(c, r) == C.zero_elem())) match = false;
        if (match) image = c;
    }
    if (image < 0) throw EmbeddingNotFound("simple module does not embed in the character module");

    SubmoduleSet t_image = submodule_closure(C, std::vector<Elem>{image});
    SubmoduleSet env = essential_closure(C, t_image);

    // Post: T essential in env (the closure loop guarantees the rest).
    if (!is_essential_in_subset(t_image, env, C))
        throw InternalCheckFailed("envelope not essential over the simple module");

    auto restricted = restrict_module(C, env);
    EnvelopeResult out{std::move(restricted.mod), ModuleMap{}, env};
    out.embedding.source_size = simple.size();
    out.embedding.target_size = out.envelope.size();
    out.embedding.side = Side::Right;
    out.embedding.images.assign(simple.size(), -1);
    for (Elem r = 0; r < ring->size(); ++r) {
        Elem src = simple.act(t, r);
        Elem dst = restricted.from_ambient[C.act(image, r)];
        if (out.embedding.images[src] == -1)
            out.embedding.images[src] = dst;
        else if (out.embedding.images[src] != dst)
            throw InternalCheckFailed("envelope embedding ill-defined");
    }
    return out;
}

bool is_injective(const FiniteModule& m) {
    if (m.is_zero()) return true;
    if (m.side() != Side::Right) throw BadEnvelope("is_injective implemented for right modules");
    const RingPtr& ring = m.ring();
    BimodulePtr cm = character_module(ring);
    FiniteModule C = cm->right_module();

    // Choose characters of M greedily so the joint kernels vanish.
    auto chars = additive_characters(m);
    const int em = m.add_exponent();
    const int er = ring->add_exponent();
    if (er % em != 0) throw InternalCheckFailed("module exponent does not divide ring exponent");
    const int scale = er / em;

    // hom_psi(x) = character (r -> psi(x*r)); kernel = { x : psi(xR) = 0 }.
    std::map<std::vector<int>, Elem> cindex;
    {
        auto cchars = additive_characters(FiniteModule::regular(ring, Side::Right));
        for (size_t t2 = 0; t2 < cchars.size(); ++t2)
            cindex[cchars[t2]] = static_cast<Elem>(t2);
    }
    auto hom_of = [&](const std::vector<int>& psi) {
        std::vector<Elem> images(m.size());
        std::vector<int> vec(ring->size());
        for (Elem x = 0; x < m.size(); ++x) {
            for (Elem r = 0; r < ring->size(); ++r) vec[r] = (psi[m.act(x, r)] * scale) % er;
            images[x] = cindex.at(vec);
        }
        return images;
    };

    std::vector<char> kernel(m.size(), 1);
    std::vector<std::vector<Elem>> homs;
    auto kernel_size = [&] {
        int c = 0;
        for (Elem x = 0; x < m.size(); ++x)
            if (kernel[x]) ++c;
        return c;
    };
    while (kernel_size() > 1) {
        int best_left = -1;
        std::vector<Elem> best_hom;
        std::vector<char> best_kernel;
        for (const auto& psi : chars) {
            auto h = hom_of(psi);
            std::vector<char> k2 = kernel;
            int left = 0;
            for (Elem x = 0; x < m.size(); ++x) {
                if (k2[x] && h[x] != C.zero_elem()) k2[x] = 0;
                if (k2[x]) ++left;
            }
            if (best_left < 0 || left < best_left) {
                best_left = left;
                best_hom = std::move(h);
                best_kernel = std::move(k2);
                if (best_left == 1) break;
            }
        }
        if (best_left < 0 || best_left >= kernel_size())
            throw InternalCheckFailed("character module failed to cogenerate");
        homs.push_back(std::move(best_hom));
        kernel = std::move(best_kernel);
    }
    if (homs.empty()) homs.push_back(hom_of(chars.front()));  // zero module edge

    const int k = static_cast<int>(homs.size());
    long long ambient_size = 1;
    for (int t = 0; t < k; ++t) {
        ambient_size *= C.size();
        if (ambient_size > Limits::global().injective_ambient_bound)
            throw SizeLimitExceeded(ambient_size, Limits::global().injective_ambient_bound,
                                    "is_injective ambient C^k");
    }

    // Product module C^k, explicit mixed-radix carrier.
    const int cs = C.size();
    const int rs = ring->size();
    const int N = static_cast<int>(ambient_size);
    std::vector<Elem> add(static_cast<size_t>(N) * N), act(static_cast<size_t>(N) * rs);
    auto decode = [&](int code, std::vector<Elem>& out) {
        for (int t = 0; t < k; ++t) {
            out[t] = code % cs;
            code /= cs;
        }
    };
    std::vector<Elem> xa(k), xb(k);
    for (int a = 0; a < N; ++a) {
        decode(a, xa);
        for (int b = 0; b < N; ++b) {
            decode(b, xb);
            int code = 0, mul = 1;
            for (int t = 0; t < k; ++t) {
                code += C.add(xa[t], xb[t]) * mul;
                mul *= cs;
            }
            add[static_cast<size_t>(a) * N + b] = code;
        }
        for (Elem r = 0; r < rs; ++r) {
            int code = 0, mul = 1;
            for (int t = 0; t < k; ++t) {
                code += C.act(xa[t], r) * mul;
                mul *= cs;
            }
            act[static_cast<size_t>(a) * rs + r] = code;
        }
    }
    FiniteModule ambient = FiniteModule::make(ring, Side::Right, N, std::move(add), std::move(act));

    // Image of M inside C^k.
    std::vector<Elem> image_elems;
    for (Elem x = 0; x < m.size(); ++x) {
        int code = 0, mul = 1;
        for (int t = 0; t < k; ++t) {
            code += homs[t][x] * mul;
            mul *= cs;
        }
        image_elems.push_back(code);
    }
    std::sort(image_elems.begin(), image_elems.end());
    image_elems.erase(std::unique(image_elems.begin(), image_elems.end()), image_elems.end());
    if (static_cast<int>(image_elems.size()) != m.size())
        throw InternalCheckFailed("embedding of M into C^k is not injective");
    SubmoduleSet image = SubmoduleSet::of(std::move(image_elems), N, Side::Right);

    SubmoduleSet closure = essential_closure(ambient, image);
    return closure.size() == image.size();
}

bool is_module_hom(const FiniteModule& a, const FiniteModule& b, const std::vector<Elem>& images) {
    if (static_cast<int>(images.size()) != a.size()) return false;
    for (Elem x = 0; x < a.size(); ++x) {
        for (Elem y = 0; y < a.size(); ++y)
            if (images[a.add(x, y)] != b.add(images[x], images[y])) return false;
        for (Elem r = 0; r < a.ring()->size(); ++r)
            if (images[a.act(x, r)] != b.act(images[x], r)) return false;
    }
    return true;
}

std::optional<ModuleMap> module_isomorphic(const FiniteModule& a, const FiniteModule& b) {
    if (a.size() > Limits::global().iso_search_bound)
        throw SizeLimitExceeded(a.size(), Limits::global().iso_search_bound, "module iso bound");
    if (a.size() != b.size()) return std::nullopt;
    if (a.ring()->size() != b.ring()->size()) return std::nullopt;

    // Invariant pruning before the backtracking search.
    auto order_multiset = [](const FiniteModule& m) {
        std::vector<int> v(m.size());
        for (Elem x = 0; x < m.size(); ++x) v[x] = m.add_order(x);
        std::sort(v.begin(), v.end());
        return v;
    };
    if (order_multiset(a) != order_multiset(b)) return std::nullopt;
    if (annihilator(a) != annihilator(b)) return std::nullopt;
    if (socle(a).size() != socle(b).size()) return std::nullopt;
    if (top(a).mod.size() != top(b).mod.size()) return std::nullopt;
    auto cyc_sizes = [](const FiniteModule& m) {
        std::vector<int> v(m.size());
        for (Elem x = 0; x < m.size(); ++x) v[x] = static_cast<int>(cyclic_submodule(m, x).size());
        return v;
    };
    std::vector<int> ca = cyc_sizes(a), cb = cyc_sizes(b);
    {
        auto sa = ca, sb = cb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }
    SubmoduleSet soc_a = socle(a), soc_b = socle(b);

    std::vector<Elem> fwd(a.size(), -1), bwd(b.size(), -1);
    fwd[a.zero_elem()] = b.zero_elem();
    bwd[b.zero_elem()] = a.zero_elem();

    // Closure of a partial map under addition and action.
    std::function<bool(std::vector<Elem>&, std::vector<Elem>&)> close =
        [&](std::vector<Elem>& f, std::vector<Elem>& g) {
            bool changed = true;
            auto assign = [&](Elem x, Elem y) {
                if (f[x] == y) return true;
                if (f[x] != -1 || g[y] != -1) return false;
                f[x] = y;
                g[y] = x;
                changed = true;
                return true;
            };
            while (changed) {
                changed = false;
                for (Elem x = 0; x < a.size(); ++x) {
                    if (f[x] == -1) continue;
                    for (Elem r = 0; r < a.ring()->size(); ++r)
                        if (!assign(a.act(x, r), b.act(f[x], r))) return false;
                    for (Elem x2 = 0; x2 < a.size(); ++x2) {
                        if (f[x2] == -1) continue;
                        if (!assign(a.add(x, x2), b.add(f[x], f[x2]))) return false;
                    }
                }
            }
            return true;
        };

    std::function<bool(std::vector<Elem>&, std::vector<Elem>&)> extend =
        [&](std::vector<Elem>& f, std::vector<Elem>& g) {
            Elem x = -1;
            for (Elem t = 0; t < a.size(); ++t)
                if (f[t] == -1) {
                    x = t;
                    break;
                }
            if (x == -1) return true;
            for (Elem y = 0; y < b.size(); ++y) {
                if (g[y] != -1) continue;
                if (a.add_order(x) != b.add_order(y)) continue;
                if (ca[x] != cb[y]) continue;
                if (soc_a.contains(x) != soc_b.contains(y)) continue;
                auto f2 = f;
                auto g2 = g;
                f2[x] = y;
                g2[y] = x;
                if (close(f2, g2) && extend(f2, g2)) {
                    f = std::move(f2);
                    g = std::move(g2);
                    return true;
                }
            }
            return false;
        };

    if (!close(fwd, bwd) || !extend(fwd, bwd)) return std::nullopt;
    if (!is_module_hom(a, b, fwd)) throw InternalCheckFailed("iso search returned a non-hom");
    ModuleMap map;
    map.source_size = a.size();
    map.target_size = b.size();
    map.images = std::move(fwd);
    map.side = a.side();
    return map;
}

}  // namespace fmr
