#include "fmr/row_module.hpp"

#include <algorithm>
#include <climits>
#include <map>

namespace fmr {

RowModule RowModule::of_idempotent(const FormalRingPtr& ring, int i) {
    const FormalMatrixRing& R = *ring;
    const int n = R.order();
    RowModule m;
    m.parent_ = ring;
    m.row_index_ = i;
    for (int j = 0; j < n; ++j) m.comps_.push_back(R.bimodule(i, j)->right_module());
    m.maps_.resize(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            if (j == k) continue;
            const int sj = R.bimodule(i, j)->size();
            const int sk = R.bimodule(j, k)->size();
            auto& t = m.maps_[static_cast<size_t>(j) * n + k];
            t.resize(static_cast<size_t>(sj) * sk);
            for (Elem a = 0; a < sj; ++a)
                for (Elem b = 0; b < sk; ++b)
                    t[static_cast<size_t>(a) * sk + b] = R.prod(i, j, k, a, b);
        }
    return m;
}

RowModule RowModule::of_idempotent_column(const FormalRingPtr& ring, int j) {
    return of_idempotent(opposite_ring(ring), j);
}

Elem RowModule::mult(int i, int j, Elem m, Elem b) const {
    if (i == j) return comps_[i].act(m, b);
    const auto& t = maps_[static_cast<size_t>(i) * coordinates() + j];
    const int cols = parent_->bimodule(i, j)->size();
    return t[static_cast<size_t>(m) * cols + b];
}

long long RowModule::size() const {
    long long total = 1;
    for (const auto& c : comps_) {
        if (total > LLONG_MAX / c.size()) return LLONG_MAX;
        total *= c.size();
    }
    return total;
}

RowModule::Tuple RowModule::zero_tuple() const {
    Tuple t(comps_.size());
    for (size_t j = 0; j < comps_.size(); ++j) t[j] = comps_[j].zero_elem();
    return t;
}

bool RowModule::is_zero_tuple(const Tuple& t) const {
    for (size_t j = 0; j < comps_.size(); ++j)
        if (t[j] != comps_[j].zero_elem()) return false;
    return true;
}

std::vector<std::vector<Elem>> RowModule::cyclic_coordinates(const Tuple& x) const {
    const int n = coordinates();
    std::vector<std::vector<Elem>> out(n);
    for (int l = 0; l < n; ++l) {
        std::vector<Elem> gens;
        for (int k = 0; k < n; ++k) {
            if (k == l) {
                for (Elem r = 0; r < parent_->ring(l)->size(); ++r)
                    gens.push_back(comps_[l].act(x[l], r));
            } else {
                const int bs = parent_->bimodule(k, l)->size();
                for (Elem b = 0; b < bs; ++b) gens.push_back(mult(k, l, x[k], b));
            }
        }
        out[l] = additive_closure(comps_[l], gens);
    }
    return out;
}

bool RowSubmodule::is_zero(const RowModule& m) const {
    for (int j = 0; j < m.coordinates(); ++j)
        if (coords[j].size() > 1) return false;
    return true;
}

long long RowSubmodule::size() const {
    long long total = 1;
    for (const auto& c : coords) total *= c.size();
    return total;
}

std::vector<int> RowSubmodule::support(const RowModule& m) const {
    std::vector<int> out;
    for (int j = 0; j < m.coordinates(); ++j)
        if (coords[j].size() > 1) out.push_back(j);
    return out;
}

void verify_row_submodule(const RowModule& m, const RowSubmodule& n) {
    const int nc = m.coordinates();
    for (int i = 0; i < nc; ++i) {
        // R_i-submodule of M_i.
        for (Elem a : n.coords[i].elems) {
            for (Elem b : n.coords[i].elems)
                if (!n.coords[i].contains(m.component(i).add(a, b)))
                    throw InternalCheckFailed("row submodule not additively closed");
            for (int j = 0; j < nc; ++j) {
                if (j == i) {
                    for (Elem r = 0; r < m.parent()->ring(i)->size(); ++r)
                        if (!n.coords[i].contains(m.component(i).act(a, r)))
                            throw InternalCheckFailed("row submodule not action closed");
                } else {
                    const int bs = m.parent()->bimodule(i, j)->size();
                    for (Elem b = 0; b < bs; ++b)
                        if (!n.coords[j].contains(m.mult(i, j, a, b)))
                            throw InternalCheckFailed("row submodule violates N_i B_ij <= N_j");
                }
            }
        }
    }
}

RowSubmodule row_socle_of(const RowModule& m) {
    const int n = m.coordinates();
    RowSubmodule out;
    out.coords.reserve(n);
    for (int j = 0; j < n; ++j) {
        const FiniteModule& Mj = m.component(j);
        const auto& J = m.parent()->ring(j)->jacobson_radical();
        std::vector<Elem> socle_elems;
        for (Elem x = 0; x < Mj.size(); ++x) {
            bool annihilates = true;
            for (int k = 0; k < n && annihilates; ++k) {
                if (k == j) continue;
                const int bs = m.parent()->bimodule(j, k)->size();
                for (Elem b = 0; b < bs && annihilates; ++b)
                    if (m.mult(j, k, x, b) != m.component(k).zero_elem()) annihilates = false;
            }
            if (!annihilates) continue;
            bool socle = true;
            for (Elem r : J)
                if (Mj.act(x, r) != Mj.zero_elem()) {
                    socle = false;
                    break;
                }
            if (socle) socle_elems.push_back(x);
        }
        out.coords.push_back(SubmoduleSet::of(std::move(socle_elems), Mj.size(), Side::Right));
    }
    verify_row_submodule(m, out);
    return out;
}

namespace {

long long encode_tuple(const RowModule& m, const RowModule::Tuple& t) {
    long long code = 0, stride = 1;
    for (int j = 0; j < m.coordinates(); ++j) {
        code += stride * t[j];
        stride *= m.component(j).size();
    }
    return code;
}

RowModule::Tuple decode_tuple(const RowModule& m, long long code) {
    RowModule::Tuple t(m.coordinates());
    for (int j = 0; j < m.coordinates(); ++j) {
        t[j] = static_cast<Elem>(code % m.component(j).size());
        code /= m.component(j).size();
    }
    return t;
}

}  // namespace

RowSubmodule row_socle_brute(const RowModule& m) {
    const long long total = m.size();
    if (total > Limits::global().row_module_bound)
        throw SizeLimitExceeded(total, Limits::global().row_module_bound, "row module bound");
    const int n = m.coordinates();

    // Cyclic coordinates for every element, then keep the simple cyclics.
    std::vector<std::vector<std::vector<Elem>>> cyclics(total);
    for (long long c = 0; c < total; ++c) cyclics[c] = m.cyclic_coordinates(decode_tuple(m, c));

    std::vector<std::vector<Elem>> union_gens(n);
    for (long long c = 0; c < total; ++c) {
        RowModule::Tuple x = decode_tuple(m, c);
        if (m.is_zero_tuple(x)) continue;
        const auto& cx = cyclics[c];
        long long cyc_size = 1;
        for (int j = 0; j < n; ++j) cyc_size *= static_cast<long long>(cx[j].size());
        if (cyc_size <= 1) continue;
        // Simple iff every nonzero member generates the same submodule.
        bool simple = true;
        std::vector<size_t> radix(n);
        for (long long sub = 0; sub < cyc_size && simple; ++sub) {
            long long rest = sub;
            RowModule::Tuple y(n);
            for (int j = 0; j < n; ++j) {
                y[j] = cx[j][rest % cx[j].size()];
                rest /= cx[j].size();
            }
            if (m.is_zero_tuple(y)) continue;
            if (cyclics[encode_tuple(m, y)] != cx) simple = false;
        }
        if (simple)
            for (int j = 0; j < n; ++j)
                union_gens[j].insert(union_gens[j].end(), cx[j].begin(), cx[j].end());
    }
    RowSubmodule out;
    for (int j = 0; j < n; ++j) {
        auto closed = additive_closure(m.component(j), union_gens[j]);
        out.coords.push_back(SubmoduleSet::of(std::move(closed), m.component(j).size(), Side::Right));
    }
    return out;
}

bool row_essential(const RowModule& m, const RowSubmodule& n) {
    const long long total = m.size();
    if (total > Limits::global().row_module_bound)
        throw SizeLimitExceeded(total, Limits::global().row_module_bound, "row module bound");
    for (long long c = 0; c < total; ++c) {
        RowModule::Tuple x = decode_tuple(m, c);
        if (m.is_zero_tuple(x)) continue;
        auto cx = m.cyclic_coordinates(x);
        bool meets = false;
        for (int l = 0; l < m.coordinates() && !meets; ++l)
            for (Elem y : cx[l])
                if (y != m.component(l).zero_elem() && n.coords[l].contains(y)) {
                    meets = true;
                    break;
                }
        if (!meets) return false;
    }
    return true;
}

void verify_row_condition_beta(const RowModule& m) {
    const int n = m.coordinates();
    const FormalMatrixRing& R = *m.parent();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            for (int k = 0; k < n; ++k) {
                if (k == j) continue;
                const int mi = m.component(i).size();
                const int bij = R.bimodule(i, j)->size();
                const int bjk = R.bimodule(j, k)->size();
                for (Elem x = 0; x < mi; ++x)
                    for (Elem b = 0; b < bij; ++b)
                        for (Elem c2 = 0; c2 < bjk; ++c2) {
                            Elem lhs = m.mult(j, k, m.mult(i, j, x, b), c2);
                            Elem rhs = m.mult(i, k, x, R.prod(i, j, k, b, c2));
                            if (lhs != rhs)
                                throw InternalCheckFailed("row module violates condition (beta)");
                        }
            }
        }
}

}  // namespace fmr
