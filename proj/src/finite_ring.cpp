#include "fmr/finite_ring.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <sstream>

namespace fmr {

Limits& Limits::global() {
    static Limits limits = [] {
        Limits l;
        auto env = [](const char* var, long long& slot) {
            if (const char* v = std::getenv(var)) slot = std::atoll(v);
        };
        long long tmp;
        if (const char* v = std::getenv("FMRING_LAW_BOUND")) l.law_exhaustive_bound = std::atoi(v);
        if (const char* v = std::getenv("FMRING_SOCLE_ORACLE_BOUND"))
            l.socle_oracle_bound = std::atoi(v);
        tmp = l.row_module_bound;
        env("FMRING_ROW_BOUND", tmp);
        l.row_module_bound = tmp;
        tmp = l.flatten_bound;
        env("FMRING_FLATTEN_BOUND", tmp);
        l.flatten_bound = tmp;
        if (const char* v = std::getenv("FMRING_ISO_BOUND")) l.iso_search_bound = std::atoi(v);
        return l;
    }();
    return limits;
}

int exit_code_for(const Error& e) {
    const std::string& c = e.code();
    if (c == "ParseError") return 2;
    if (c == "UnresolvedReference") return 3;
    if (c == "AxiomViolation") return 4;
    if (c == "AlphaViolation") return 5;
    if (c == "BalanceViolation") return 6;
    if (c == "NotLocal") return 7;
    if (c == "AssumptionFailed") return 8;
    if (c == "SizeLimitExceeded") return 9;
    if (c == "PrerequisiteFailed") return 10;
    if (c == "InternalCheckFailed") return 11;
    if (c == "SoclesDiffer") return 13;
    if (c == "BadEnvelope") return 14;
    if (c == "EmbeddingNotFound") return 15;
    return 1;
}

std::string Fnv1a64::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    uint64_t v = state;
    for (int t = 15; t >= 0; --t) {
        out[t] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

namespace {

void require(bool ok, const char* axiom, std::vector<Elem> witness, const std::string& msg) {
    if (!ok) throw AxiomViolation(axiom, std::move(witness), msg);
}

std::string w3(const char* law, Elem a, Elem b, Elem c) {
    std::ostringstream os;
    os << law << " fails at (" << a << ", " << b << ", " << c << ")";
    return os.str();
}

}  // namespace

RingPtr FiniteRing::make(int size, std::vector<Elem> add, std::vector<Elem> mul, Elem zero,
                         Elem one, std::vector<std::string> labels, std::string name) {
    if (size <= 0) throw AxiomViolation("carrier", {}, "carrier must be nonempty");
    const size_t n = static_cast<size_t>(size);
    if (add.size() != n * n || mul.size() != n * n)
        throw AxiomViolation("totality", {}, "tables must be size*size");
    for (Elem v : add)
        require(v >= 0 && v < size, "totality", {v}, "add table entry out of range");
    for (Elem v : mul)
        require(v >= 0 && v < size, "totality", {v}, "mul table entry out of range");
    require(zero >= 0 && zero < size && one >= 0 && one < size, "totality", {},
            "zero/one out of range");
    require(size == 1 || zero != one, "identity", {zero}, "zero == one in a nonzero carrier");

    auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
    FiniteRing& R = *ring;
    R.size_ = size;
    R.add_ = std::move(add);
    R.mul_ = std::move(mul);
    R.zero_ = zero;
    R.one_ = one;
    R.labels_ = std::move(labels);
    R.name_ = std::move(name);

    // Abelian group axioms.
    for (Elem a = 0; a < size; ++a) {
        require(R.add(a, zero) == a && R.add(zero, a) == a, "add-identity", {a},
                "zero is not an additive identity");
        require(R.mul(a, one) == a && R.mul(one, a) == a, "mul-identity", {a},
                "one is not a multiplicative identity");
    }
    R.neg_.assign(n, -1);
    for (Elem a = 0; a < size; ++a) {
        for (Elem b = 0; b < size; ++b) {
            require(R.add(a, b) == R.add(b, a), "add-commutativity", {a, b},
                    w3("a+b=b+a", a, b, 0));
            if (R.add(a, b) == zero && R.neg_[a] < 0) R.neg_[a] = b;
        }
        require(R.neg_[a] >= 0, "add-inverse", {a}, "element without additive inverse");
    }

    const Limits& lim = Limits::global();
    const bool exhaustive = size <= lim.law_exhaustive_bound;
    auto check_triple = [&](Elem a, Elem b, Elem c) {
        require(R.add(R.add(a, b), c) == R.add(a, R.add(b, c)), "add-associativity", {a, b, c},
                w3("(a+b)+c=a+(b+c)", a, b, c));
        require(R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c)), "mul-associativity", {a, b, c},
                w3("(ab)c=a(bc)", a, b, c));
        require(R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)), "distributivity",
                {a, b, c}, w3("a(b+c)=ab+ac", a, b, c));
        require(R.mul(R.add(a, b), c) == R.add(R.mul(a, c), R.mul(b, c)), "distributivity",
                {a, b, c}, w3("(a+b)c=ac+bc", a, b, c));
    };
    if (exhaustive) {
        for (Elem a = 0; a < size; ++a)
            for (Elem b = 0; b < size; ++b)
                for (Elem c = 0; c < size; ++c) check_triple(a, b, c);
    } else {
        std::mt19937_64 rng(0x5eedf00dULL ^ (static_cast<uint64_t>(size) << 20));
        std::uniform_int_distribution<Elem> pick(0, size - 1);
        for (int t = 0; t < lim.law_samples; ++t) check_triple(pick(rng), pick(rng), pick(rng));
    }

    // Units (two-sided) and Jacobson radical via the quasi-regularity test.
    R.unit_mask_.assign(n, 0);
    for (Elem a = 0; a < size; ++a) {
        for (Elem b = 0; b < size; ++b) {
            if (R.mul(a, b) == one && R.mul(b, a) == one) {
                R.unit_mask_[a] = 1;
                break;
            }
        }
        if (R.unit_mask_[a]) R.units_.push_back(a);
    }
    R.radical_mask_.assign(n, 0);
    for (Elem x = 0; x < size; ++x) {
        bool in = true;
        for (Elem r = 0; r < size && in; ++r)
            if (!R.unit_mask_[R.sub(one, R.mul(r, x))]) in = false;
        if (in) {
            R.radical_mask_[x] = 1;
            R.radical_.push_back(x);
        }
    }
    // The computed set must be a two-sided ideal; anything else is a table bug.
    for (Elem x : R.radical_) {
        for (Elem y : R.radical_)
            if (!R.radical_mask_[R.add(x, y)])
                throw InternalCheckFailed("radical not closed under addition");
        for (Elem r = 0; r < size; ++r)
            if (!R.radical_mask_[R.mul(r, x)] || !R.radical_mask_[R.mul(x, r)])
                throw InternalCheckFailed("radical not an ideal");
    }

    // Local <=> non-units form an additive subgroup <=> non-units == J(R).
    if (size > 1) {
        bool local = true;
        for (Elem a = 0; a < size && local; ++a)
            if (!R.unit_mask_[a] && !R.radical_mask_[a]) local = false;
        R.local_ = local;
    }

    Fnv1a64 h;
    h.feed_i32(size);
    h.feed_i32(zero);
    h.feed_i32(one);
    h.feed_vec(R.add_);
    h.feed_vec(R.mul_);
    R.hash_ = h.state;
    return ring;
}

int FiniteRing::add_order(Elem a) const {
    int ord = 1;
    Elem cur = a;
    while (cur != zero_) {
        cur = add(cur, a);
        ++ord;
    }
    return ord;
}

int FiniteRing::add_exponent() const {
    int e = 1;
    for (Elem a = 0; a < size_; ++a) e = std::lcm(e, add_order(a));
    return e;
}

const std::string& FiniteRing::label(Elem a) const {
    static const std::string empty;
    if (a >= 0 && static_cast<size_t>(a) < labels_.size()) return labels_[a];
    return empty;
}

bool FiniteRing::tables_equal(const FiniteRing& other) const {
    return size_ == other.size_ && zero_ == other.zero_ && one_ == other.one_ &&
           add_ == other.add_ && mul_ == other.mul_;
}

std::optional<ResidueField> local_residue(const RingPtr& ring) {
    const FiniteRing& R = *ring;
    if (R.is_zero_ring() || !R.is_local()) return std::nullopt;
    const int n = R.size();
    const auto& J = R.jacobson_radical();

    // Coset representative = least element of x + J.
    std::vector<Elem> rep(n);
    for (Elem x = 0; x < n; ++x) {
        Elem best = x;
        for (Elem j : J) best = std::min(best, R.add(x, j));
        rep[x] = best;
    }
    std::vector<Elem> reps;
    for (Elem x = 0; x < n; ++x)
        if (rep[x] == x) reps.push_back(x);
    std::vector<Elem> index_of(n, -1);
    for (size_t t = 0; t < reps.size(); ++t) index_of[reps[t]] = static_cast<Elem>(t);

    const int q = static_cast<int>(reps.size());
    std::vector<Elem> add(static_cast<size_t>(q) * q), mul(static_cast<size_t>(q) * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            add[static_cast<size_t>(a) * q + b] = index_of[rep[R.add(reps[a], reps[b])]];
            mul[static_cast<size_t>(a) * q + b] = index_of[rep[R.mul(reps[a], reps[b])]];
        }
    std::vector<std::string> labels(q);
    for (int a = 0; a < q; ++a) {
        const std::string& l = R.label(reps[a]);
        labels[a] = l.empty() ? ("[" + std::to_string(reps[a]) + "]") : (l + "~");
    }
    RingPtr field = FiniteRing::make(q, std::move(add), std::move(mul), index_of[rep[R.zero()]],
                                     index_of[rep[R.one()]], std::move(labels),
                                     R.name().empty() ? "residue" : R.name() + "/J");
    // The quotient of a local ring by its radical must be a skew field.
    for (Elem a = 0; a < q; ++a)
        if (a != field->zero() && !field->is_unit(a))
            throw InternalCheckFailed("residue quotient is not a skew field");

    ResidueField out;
    out.field = field;
    out.proj.resize(n);
    for (Elem x = 0; x < n; ++x) out.proj[x] = index_of[rep[x]];
    out.section = reps;
    return out;
}

namespace {

// Shared backtracking for ring iso / automorphism enumeration.  Maps are grown
// pair by pair with closure under both operations; conflicts backtrack.
struct RingMatcher {
    const FiniteRing& A;
    const FiniteRing& B;
    bool enumerate_all = false;
    std::vector<std::vector<Elem>> found;

    std::optional<std::vector<Elem>> run() {
        if (A.size() != B.size()) return std::nullopt;
        std::vector<Elem> fwd(A.size(), -1), bwd(B.size(), -1);
        fwd[A.zero()] = B.zero();
        bwd[B.zero()] = A.zero();
        if (A.zero() != A.one()) {
            if (B.zero() == B.one()) return std::nullopt;
            fwd[A.one()] = B.one();
            bwd[B.one()] = A.one();
        }
        if (!close(fwd, bwd)) return std::nullopt;
        if (extend(fwd, bwd)) {
            if (!enumerate_all) return found.front();
        }
        if (!found.empty()) return found.front();
        return std::nullopt;
    }

    // Propagate closure: for every defined pair, sums and products must map
    // consistently.  Returns false on conflict.
    bool close(std::vector<Elem>& fwd, std::vector<Elem>& bwd) {
        bool changed = true;
        auto assign = [&](Elem a, Elem b) {
            if (fwd[a] == b) return true;
            if (fwd[a] != -1 || bwd[b] != -1) return false;
            fwd[a] = b;
            bwd[b] = a;
            changed = true;
            return true;
        };
        while (changed) {
            changed = false;
            for (Elem a = 0; a < A.size(); ++a) {
                if (fwd[a] == -1) continue;
                for (Elem a2 = 0; a2 < A.size(); ++a2) {
                    if (fwd[a2] == -1) continue;
                    if (!assign(A.add(a, a2), B.add(fwd[a], fwd[a2]))) return false;
                    if (!assign(A.mul(a, a2), B.mul(fwd[a], fwd[a2]))) return false;
                }
            }
        }
        return true;
    }

    bool extend(std::vector<Elem>& fwd, std::vector<Elem>& bwd) {
        Elem a = -1;
        for (Elem x = 0; x < A.size(); ++x)
            if (fwd[x] == -1) {
                a = x;
                break;
            }
        if (a == -1) {
            found.push_back(fwd);
            return true;
        }
        for (Elem b = 0; b < B.size(); ++b) {
            if (bwd[b] != -1) continue;
            if (A.add_order(a) != B.add_order(b)) continue;
            if (A.is_unit(a) != B.is_unit(b)) continue;
            if (A.in_radical(a) != B.in_radical(b)) continue;
            auto f2 = fwd;
            auto b2 = bwd;
            f2[a] = b;
            b2[b] = a;
            if (close(f2, b2) && extend(f2, b2) && !enumerate_all) return true;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<Elem>> ring_isomorphism(const FiniteRing& a, const FiniteRing& b) {
    RingMatcher m{a, b};
    return m.run();
}

std::vector<std::vector<Elem>> ring_automorphisms(const FiniteRing& r) {
    RingMatcher m{r, r};
    m.enumerate_all = true;
    m.run();
    std::sort(m.found.begin(), m.found.end());
    m.found.erase(std::unique(m.found.begin(), m.found.end()), m.found.end());
    return m.found;
}

}  // namespace fmr
