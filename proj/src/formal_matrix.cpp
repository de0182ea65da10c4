#include "fmr/formal_matrix.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <random>
#include <sstream>

namespace fmr {

Elem MatrixElement::at(int i, int j) const {
    return entries[static_cast<size_t>(i) * parent->order() + j];
}
Elem& MatrixElement::at(int i, int j) {
    return entries[static_cast<size_t>(i) * parent->order() + j];
}

FormalMatrixRing::Spec::Spec(int n) {
    diagonal.resize(n);
    bimodules.resize(static_cast<size_t>(n) * n);
    products.resize(static_cast<size_t>(n) * n * n);
}

std::vector<Elem>& FormalMatrixRing::Spec::product(int i, int j, int k) {
    const int n = order();
    return products[(static_cast<size_t>(i) * n + j) * n + k];
}

namespace {

std::string idx3(int i, int j, int k) {
    std::ostringstream os;
    os << "(" << i + 1 << "," << j + 1 << "," << k + 1 << ")";
    return os.str();
}

}  // namespace

FormalRingPtr FormalMatrixRing::build(Spec spec) {
    const int n = spec.order();
    if (n <= 0) throw AxiomViolation("order", {}, "formal matrix ring needs order >= 1");
    auto ring = std::shared_ptr<FormalMatrixRing>(new FormalMatrixRing());
    FormalMatrixRing& R = *ring;
    R.n_ = n;
    R.diag_ = std::move(spec.diagonal);

    for (int i = 0; i < n; ++i) {
        if (!R.diag_[i]) throw NotLocal(i + 1, "missing diagonal ring");
        if (R.diag_[i]->is_zero_ring() || !R.diag_[i]->is_local())
            throw NotLocal(i + 1, "diagonal ring " + std::to_string(i + 1) + " is not local");
    }

    R.bim_.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            BimodulePtr& slot = R.bim_[static_cast<size_t>(i) * n + j];
            slot = spec.bimodules[static_cast<size_t>(i) * n + j];
            if (i == j) {
                if (!slot) slot = FiniteBimodule::regular(R.diag_[i]);
                if (!slot->tables_equal(*FiniteBimodule::regular(R.diag_[i])))
                    throw AxiomViolation("diagonal-bimodule", {},
                                         "B_{i,i} must be the ring as a bimodule over itself");
            }
            if (!slot) throw AxiomViolation("bimodule", {}, "missing coordinate bimodule");
            if (slot->left_ring().get() != R.diag_[i].get() ||
                slot->right_ring().get() != R.diag_[j].get())
                throw AxiomViolation("bimodule-wiring", {},
                                     "B_{i,j} must be an R_i-R_j-bimodule (shared ring objects)");
        }

    // Materialize all product tables; diagonal-index patterns come from actions.
    R.prod_.resize(static_cast<size_t>(n) * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                auto& table = R.prod_[(static_cast<size_t>(i) * n + j) * n + k];
                const FiniteBimodule& Bij = *R.bimodule(i, j);
                const FiniteBimodule& Bjk = *R.bimodule(j, k);
                const FiniteBimodule& Bik = *R.bimodule(i, k);
                const size_t cells = static_cast<size_t>(Bij.size()) * Bjk.size();
                if (i == j) {
                    // phi_{i,i,k}: left action of R_i on B_{i,k}.
                    table.resize(cells);
                    for (Elem a = 0; a < Bij.size(); ++a)
                        for (Elem b = 0; b < Bjk.size(); ++b)
                            table[static_cast<size_t>(a) * Bjk.size() + b] = Bjk.lact(a, b);
                    continue;
                }
                if (j == k) {
                    // phi_{i,j,j}: right action of R_j on B_{i,j}.
                    table.resize(cells);
                    for (Elem a = 0; a < Bij.size(); ++a)
                        for (Elem b = 0; b < Bjk.size(); ++b)
                            table[static_cast<size_t>(a) * Bjk.size() + b] = Bij.ract(a, b);
                    continue;
                }
                auto& given = spec.products[(static_cast<size_t>(i) * n + j) * n + k];
                if (given.empty()) {
                    table.assign(cells, Bik.zero_elem());
                } else {
                    if (given.size() != cells)
                        throw AxiomViolation("product-table", {},
                                             "product table " + idx3(i, j, k) + " has wrong size");
                    for (Elem v : given)
                        if (v < 0 || v >= Bik.size())
                            throw AxiomViolation("product-table", {v},
                                                 "product entry out of range at " + idx3(i, j, k));
                    table = std::move(given);
                }
            }

    // Bilinearity and balance of every proper product table.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k) continue;
                const FiniteBimodule& Bij = *R.bimodule(i, j);
                const FiniteBimodule& Bjk = *R.bimodule(j, k);
                const FiniteBimodule& Bik = *R.bimodule(i, k);
                const RingPtr& Ri = R.diag_[i];
                const RingPtr& Rj = R.diag_[j];
                const RingPtr& Rk = R.diag_[k];
                auto p = [&](Elem a, Elem b) { return R.prod(i, j, k, a, b); };
                for (Elem a = 0; a < Bij.size(); ++a)
                    for (Elem b = 0; b < Bjk.size(); ++b) {
                        for (Elem a2 = 0; a2 < Bij.size(); ++a2)
                            if (p(Bij.add(a, a2), b) != Bik.add(p(a, b), p(a2, b)))
                                throw BalanceViolation(i + 1, j + 1, k + 1, {a, a2, b},
                                                       "product not additive in the left argument");
                        for (Elem b2 = 0; b2 < Bjk.size(); ++b2)
                            if (p(a, Bjk.add(b, b2)) != Bik.add(p(a, b), p(a, b2)))
                                throw BalanceViolation(i + 1, j + 1, k + 1, {a, b, b2},
                                                       "product not additive in the right argument");
                        for (Elem r = 0; r < Ri->size(); ++r)
                            if (p(Bij.lact(r, a), b) != Bik.lact(r, p(a, b)))
                                throw BalanceViolation(i + 1, j + 1, k + 1, {r, a, b},
                                                       "product not left R_i-linear");
                        for (Elem r = 0; r < Rk->size(); ++r)
                            if (p(a, Bjk.ract(b, r)) != Bik.ract(p(a, b), r))
                                throw BalanceViolation(i + 1, j + 1, k + 1, {a, b, r},
                                                       "product not right R_k-linear");
                        for (Elem r = 0; r < Rj->size(); ++r)
                            if (p(Bij.ract(a, r), b) != p(a, Bjk.lact(r, b)))
                                throw BalanceViolation(i + 1, j + 1, k + 1, {a, r, b},
                                                       "product not R_j-balanced");
                    }
            }

    // Associativity condition: exhaustive over adjacent-distinct index
    // quadruples (the mixed patterns reduce to the linearity and balance laws
    // above), plus seeded random samples over all patterns.
    auto alpha_check = [&](int i, int j, int k, int l, Elem a, Elem b, Elem c) {
        Elem ab = R.prod(i, j, k, a, b);
        Elem lhs = R.prod(i, k, l, ab, c);
        Elem bc = R.prod(j, k, l, b, c);
        Elem rhs = R.prod(i, j, l, a, bc);
        if (lhs != rhs)
            throw AlphaViolation(i + 1, j + 1, k + 1, l + 1, a, b, c,
                                 "associativity fails at indices (" + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1) + "," + std::to_string(k + 1) + "," +
                                     std::to_string(l + 1) + ")");
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            for (int k = 0; k < n; ++k) {
                if (k == j) continue;
                for (int l = 0; l < n; ++l) {
                    if (l == k) continue;
                    const int sij = R.bimodule(i, j)->size();
                    const int sjk = R.bimodule(j, k)->size();
                    const int skl = R.bimodule(k, l)->size();
                    for (Elem a = 0; a < sij; ++a)
                        for (Elem b = 0; b < sjk; ++b)
                            for (Elem c = 0; c < skl; ++c) alpha_check(i, j, k, l, a, b, c);
                }
            }
        }
    {
        std::mt19937_64 rng(0xa1fa5eedULL);
        std::uniform_int_distribution<int> pick_idx(0, n - 1);
        for (int t = 0; t < 10000; ++t) {
            int i = pick_idx(rng), j = pick_idx(rng), k = pick_idx(rng), l = pick_idx(rng);
            std::uniform_int_distribution<Elem> pa(0, R.bimodule(i, j)->size() - 1);
            std::uniform_int_distribution<Elem> pb(0, R.bimodule(j, k)->size() - 1);
            std::uniform_int_distribution<Elem> pc(0, R.bimodule(k, l)->size() - 1);
            alpha_check(i, j, k, l, pa(rng), pb(rng), pc(rng));
        }
    }

    // Randomized spot checks of element arithmetic (associativity and
    // distributivity of the matrix operations).
    {
        std::mt19937_64 rng(0xe1e5eedULL);
        auto random_elem = [&] {
            MatrixElement x = R.zero_element();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    std::uniform_int_distribution<Elem> pick(0, R.bimodule(i, j)->size() - 1);
                    x.at(i, j) = pick(rng);
                }
            return x;
        };
        for (int t = 0; t < 200; ++t) {
            MatrixElement x = random_elem(), y = random_elem(), z = random_elem();
            if (!(R.mul(R.mul(x, y), z) == R.mul(x, R.mul(y, z))))
                throw InternalCheckFailed("matrix multiplication not associative");
            if (!(R.mul(x, R.add(y, z)) == R.add(R.mul(x, y), R.mul(x, z))))
                throw InternalCheckFailed("matrix multiplication not distributive");
        }
    }
    return ring;
}

MatrixElement FormalMatrixRing::zero_element() const {
    MatrixElement x;
    x.parent = this;
    x.entries.resize(static_cast<size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) x.at(i, j) = bimodule(i, j)->zero_elem();
    return x;
}

MatrixElement FormalMatrixRing::one_element() const {
    MatrixElement x = zero_element();
    for (int i = 0; i < n_; ++i) x.at(i, i) = diag_[i]->one();
    return x;
}

MatrixElement FormalMatrixRing::idempotent(int i) const {
    MatrixElement x = zero_element();
    x.at(i, i) = diag_[i]->one();
    return x;
}

MatrixElement FormalMatrixRing::unit_matrix(int i, int j, Elem a) const {
    MatrixElement x = zero_element();
    x.at(i, j) = a;
    return x;
}

MatrixElement FormalMatrixRing::add(const MatrixElement& x, const MatrixElement& y) const {
    MatrixElement z = zero_element();
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) z.at(i, j) = bimodule(i, j)->add(x.at(i, j), y.at(i, j));
    return z;
}

MatrixElement FormalMatrixRing::neg(const MatrixElement& x) const {
    MatrixElement z = zero_element();
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) z.at(i, j) = bimodule(i, j)->neg(x.at(i, j));
    return z;
}

MatrixElement FormalMatrixRing::mul(const MatrixElement& x, const MatrixElement& y) const {
    MatrixElement z = zero_element();
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const FiniteBimodule& Bik = *bimodule(i, k);
            Elem acc = Bik.zero_elem();
            for (int j = 0; j < n_; ++j) acc = Bik.add(acc, prod(i, j, k, x.at(i, j), y.at(j, k)));
            z.at(i, k) = acc;
        }
    return z;
}

bool FormalMatrixRing::is_zero(const MatrixElement& x) const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (x.at(i, j) != bimodule(i, j)->zero_elem()) return false;
    return true;
}

long long FormalMatrixRing::total_size() const {
    long long total = 1;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            if (total > LLONG_MAX / bimodule(i, j)->size()) return LLONG_MAX;
            total *= bimodule(i, j)->size();
        }
    return total;
}

std::vector<std::vector<int>> FormalMatrixRing::central_idempotent_blocks() const {
    std::vector<int> parent(n_);
    for (int i = 0; i < n_; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (i != j && !bimodule(i, j)->is_zero()) parent[find(i)] = find(j);
    std::vector<std::vector<int>> blocks(n_);
    for (int i = 0; i < n_; ++i) blocks[find(i)].push_back(i);
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                [](const std::vector<int>& b) { return b.empty(); }),
                 blocks.end());
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

bool FormalMatrixRing::is_trivial() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k) {
                if (i == j || j == k) continue;
                const FiniteBimodule& Bik = *bimodule(i, k);
                for (Elem a = 0; a < bimodule(i, j)->size(); ++a)
                    for (Elem b = 0; b < bimodule(j, k)->size(); ++b)
                        if (prod(i, j, k, a, b) != Bik.zero_elem()) return false;
            }
    return true;
}

bool FormalMatrixRing::is_basic() const {
    // Hom(e_iR, e_jR) = B_{j,i} acting by left multiplication; an isomorphism
    // exists iff some y makes every coordinate map m -> phi_{j,i,k}(y, m) bijective.
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            if (i == j) continue;
            const FiniteBimodule& Bji = *bimodule(j, i);
            for (Elem y = 0; y < Bji.size(); ++y) {
                bool bijective = true;
                for (int k = 0; k < n_ && bijective; ++k) {
                    const int src = bimodule(i, k)->size();
                    if (src != bimodule(j, k)->size()) {
                        bijective = false;
                        break;
                    }
                    std::vector<char> hit(src, 0);
                    for (Elem m = 0; m < src; ++m) {
                        Elem v = prod(j, i, k, y, m);
                        if (hit[v]) {
                            bijective = false;
                            break;
                        }
                        hit[v] = 1;
                    }
                }
                if (bijective) return false;  // e_iR and e_jR are isomorphic
            }
        }
    return true;
}

uint64_t FormalMatrixRing::content_hash() const {
    Fnv1a64 h;
    h.feed_i32(n_);
    for (int i = 0; i < n_; ++i) {
        uint64_t rh = diag_[i]->content_hash();
        h.feed(&rh, sizeof rh);
    }
    for (const auto& b : bim_) {
        uint64_t bh = b->content_hash();
        h.feed(&bh, sizeof bh);
    }
    for (const auto& t : prod_) h.feed_vec(t);
    return h.state;
}

bool FormalMatrixRing::tables_identical(const FormalMatrixRing& other) const {
    if (n_ != other.n_) return false;
    for (int i = 0; i < n_; ++i)
        if (!diag_[i]->tables_equal(*other.diag_[i])) return false;
    for (size_t t = 0; t < bim_.size(); ++t)
        if (!bim_[t]->tables_equal(*other.bim_[t])) return false;
    return prod_ == other.prod_;
}

FormalRingPtr corner(const FormalRingPtr& ring, const std::vector<int>& indices) {
    const FormalMatrixRing& R = *ring;
    if (indices.empty()) throw AxiomViolation("corner", {}, "corner needs a nonempty index set");
    FormalMatrixRing::Spec spec(static_cast<int>(indices.size()));
    const int m = spec.order();
    for (int a = 0; a < m; ++a) spec.diagonal[a] = R.ring(indices[a]);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            spec.bimodules[static_cast<size_t>(a) * m + b] = R.bimodule(indices[a], indices[b]);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c) {
                if (a == b || b == c) continue;
                const int i = indices[a], j = indices[b], k = indices[c];
                const size_t cells =
                    static_cast<size_t>(R.bimodule(i, j)->size()) * R.bimodule(j, k)->size();
                std::vector<Elem> table(cells);
                for (Elem x = 0; x < R.bimodule(i, j)->size(); ++x)
                    for (Elem y = 0; y < R.bimodule(j, k)->size(); ++y)
                        table[static_cast<size_t>(x) * R.bimodule(j, k)->size() + y] =
                            R.prod(i, j, k, x, y);
                spec.product(a, b, c) = std::move(table);
            }
    return FormalMatrixRing::build(std::move(spec));
}

namespace {

RingPtr opposite_finite_ring(const RingPtr& r) {
    const FiniteRing& R = *r;
    const int n = R.size();
    std::vector<Elem> mul(static_cast<size_t>(n) * n);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) mul[static_cast<size_t>(a) * n + b] = R.mul(b, a);
    std::vector<std::string> labels;
    for (Elem a = 0; a < n; ++a) labels.push_back(R.label(a));
    return FiniteRing::make(n, R.add_table(), std::move(mul), R.zero(), R.one(), std::move(labels),
                            R.name().empty() ? "op" : R.name() + "^op");
}

}  // namespace

FormalRingPtr opposite_ring(const FormalRingPtr& ring) {
    const FormalMatrixRing& R = *ring;
    const int n = R.order();
    FormalMatrixRing::Spec spec(n);
    for (int i = 0; i < n; ++i) spec.diagonal[i] = opposite_finite_ring(R.ring(i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const FiniteBimodule& B = *R.bimodule(j, i);
            // B'_{i,j} = B_{j,i} with swapped, opposite-ring actions.
            const RingPtr& L = spec.diagonal[i];
            const RingPtr& Rr = spec.diagonal[j];
            std::vector<Elem> la(static_cast<size_t>(L->size()) * B.size());
            std::vector<Elem> ra(static_cast<size_t>(B.size()) * Rr->size());
            for (Elem r = 0; r < L->size(); ++r)
                for (Elem mel = 0; mel < B.size(); ++mel)
                    la[static_cast<size_t>(r) * B.size() + mel] = B.ract(mel, r);
            for (Elem mel = 0; mel < B.size(); ++mel)
                for (Elem r = 0; r < Rr->size(); ++r)
                    ra[static_cast<size_t>(mel) * Rr->size() + r] = B.lact(r, mel);
            spec.bimodules[static_cast<size_t>(i) * n + j] =
                FiniteBimodule::make(L, Rr, B.size(), B.add_table(), std::move(la), std::move(ra));
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k) continue;
                const int sij = R.bimodule(j, i)->size();
                const int sjk = R.bimodule(k, j)->size();
                std::vector<Elem> table(static_cast<size_t>(sij) * sjk);
                for (Elem a = 0; a < sij; ++a)
                    for (Elem b = 0; b < sjk; ++b)
                        table[static_cast<size_t>(a) * sjk + b] = R.prod(k, j, i, b, a);
                spec.product(i, j, k) = std::move(table);
            }
    return FormalMatrixRing::build(std::move(spec));
}

FormalRingPtr trivial_formal_ring(std::vector<RingPtr> diagonal,
                                  std::vector<BimodulePtr> bimodules) {
    FormalMatrixRing::Spec spec(static_cast<int>(diagonal.size()));
    spec.diagonal = std::move(diagonal);
    spec.bimodules = std::move(bimodules);
    return FormalMatrixRing::build(std::move(spec));
}

long long FlattenResult::index_of(const MatrixElement& x) const {
    long long code = 0;
    for (size_t t = 0; t < x.entries.size(); ++t) code += cell_stride[t] * x.entries[t];
    return code;
}

MatrixElement FlattenResult::element_of(const FormalMatrixRing& parent, long long code) const {
    MatrixElement x;
    x.parent = &parent;
    const int n = parent.order();
    x.entries.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const size_t t = static_cast<size_t>(i) * n + j;
            x.entries[t] = static_cast<Elem>((code / cell_stride[t]) % parent.bimodule(i, j)->size());
        }
    return x;
}

FlattenResult flatten(const FormalRingPtr& ring) {
    const FormalMatrixRing& R = *ring;
    const long long bound = Limits::global().flatten_bound;
    const long long total = R.total_size();
    if (total > bound) throw SizeLimitExceeded(total, bound, "flatten carrier bound");

    FlattenResult out;
    out.size = total;
    const int n = R.order();
    out.cell_stride.resize(static_cast<size_t>(n) * n);
    long long stride = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out.cell_stride[static_cast<size_t>(i) * n + j] = stride;
            stride *= R.bimodule(i, j)->size();
        }

    const int N = static_cast<int>(total);
    std::vector<Elem> add(static_cast<size_t>(N) * N), mul(static_cast<size_t>(N) * N);
    std::vector<MatrixElement> elems;
    elems.reserve(N);
    for (long long c = 0; c < total; ++c) elems.push_back(out.element_of(R, c));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            add[static_cast<size_t>(a) * N + b] =
                static_cast<Elem>(out.index_of(R.add(elems[a], elems[b])));
            mul[static_cast<size_t>(a) * N + b] =
                static_cast<Elem>(out.index_of(R.mul(elems[a], elems[b])));
        }
    out.ring = FiniteRing::make(N, std::move(add), std::move(mul),
                                static_cast<Elem>(out.index_of(R.zero_element())),
                                static_cast<Elem>(out.index_of(R.one_element())), {}, "flat");

    // Canonical idempotents land on orthogonal idempotents summing to one.
    const FiniteRing& F = *out.ring;
    Elem sum = F.zero();
    for (int i = 0; i < n; ++i) {
        Elem ei = static_cast<Elem>(out.index_of(R.idempotent(i)));
        if (F.mul(ei, ei) != ei) throw InternalCheckFailed("flatten: e_i not idempotent");
        for (int j = 0; j < i; ++j) {
            Elem ej = static_cast<Elem>(out.index_of(R.idempotent(j)));
            if (F.mul(ei, ej) != F.zero() || F.mul(ej, ei) != F.zero())
                throw InternalCheckFailed("flatten: idempotents not orthogonal");
        }
        sum = F.add(sum, ei);
    }
    if (sum != F.one()) throw InternalCheckFailed("flatten: idempotents do not sum to one");
    return out;
}

}  // namespace fmr
