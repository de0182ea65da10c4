#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmr {

/// Index of an element inside a finite carrier 0..size-1.
using Elem = int32_t;

enum class Side { Left, Right };

inline const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

/// Size guards, overridable via FMRING_* environment variables and CLI flags.
struct Limits {
    // Exhaustive O(n^3) ring-law checking up to this carrier size; seeded
    // random sampling beyond it (flatten outputs are the only large carriers).
    int law_exhaustive_bound = 512;
    int law_samples = 20000;
    // socle(M) cross-checks ann(J) against the simple-submodule sum up to here.
    int socle_oracle_bound = 64;
    long long row_module_bound = 4096;
    long long flatten_bound = 65536;
    int iso_search_bound = 4096;
    long long injective_ambient_bound = 4096;  // carrier of C^k (tables are quadratic in it)

    static Limits& global();
};

// ---------------------------------------------------------------------------
// Error taxonomy.  Every class maps to a distinct CLI exit code.

struct Error : std::runtime_error {
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

struct AxiomViolation : Error {
    std::string axiom;
    std::vector<Elem> witness;
    AxiomViolation(std::string ax, std::vector<Elem> w, const std::string& msg)
        : Error("AxiomViolation", msg), axiom(std::move(ax)), witness(std::move(w)) {}
};

struct AlphaViolation : Error {
    int i, j, k, l;
    Elem a, b, c;
    AlphaViolation(int i_, int j_, int k_, int l_, Elem a_, Elem b_, Elem c_,
                   const std::string& msg)
        : Error("AlphaViolation", msg), i(i_), j(j_), k(k_), l(l_), a(a_), b(b_), c(c_) {}
};

struct BalanceViolation : Error {
    int i, j, k;
    std::vector<Elem> witness;
    BalanceViolation(int i_, int j_, int k_, std::vector<Elem> w, const std::string& msg)
        : Error("BalanceViolation", msg), i(i_), j(j_), k(k_), witness(std::move(w)) {}
};

struct NotLocal : Error {
    int index;
    NotLocal(int idx, const std::string& msg) : Error("NotLocal", msg), index(idx) {}
};

struct SizeLimitExceeded : Error {
    long long requested, bound;
    SizeLimitExceeded(long long req, long long b, const std::string& msg)
        : Error("SizeLimitExceeded", msg), requested(req), bound(b) {}
};

struct InternalCheckFailed : Error {
    explicit InternalCheckFailed(const std::string& msg) : Error("InternalCheckFailed", msg) {}
};

struct EmbeddingNotFound : Error {
    explicit EmbeddingNotFound(const std::string& msg) : Error("EmbeddingNotFound", msg) {}
};

struct PrerequisiteFailed : Error {
    explicit PrerequisiteFailed(const std::string& msg) : Error("PrerequisiteFailed", msg) {}
};

struct SoclesDiffer : Error {
    int index;
    SoclesDiffer(int idx, const std::string& msg) : Error("SoclesDiffer", msg), index(idx) {}
};

struct BadEnvelope : Error {
    explicit BadEnvelope(const std::string& msg) : Error("BadEnvelope", msg) {}
};

struct AssumptionFailed : Error {
    std::string condition;  // one of A, A', B, C, C', D, D'
    std::string witness;
    AssumptionFailed(std::string cond, std::string w, const std::string& msg)
        : Error("AssumptionFailed", msg), condition(std::move(cond)), witness(std::move(w)) {}
};

struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg) : Error("ParseError", msg), line(line_) {}
};

struct UnresolvedReference : Error {
    std::string name;
    UnresolvedReference(std::string n, const std::string& msg)
        : Error("UnresolvedReference", msg), name(std::move(n)) {}
};

/// Exit code for the CLI; one code per error class.
int exit_code_for(const Error& e);

/// FNV-1a 64-bit, used for content hashes in reports and dedup keys.
struct Fnv1a64 {
    uint64_t state = 1469598103934665603ULL;
    void feed(const void* data, size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (size_t t = 0; t < len; ++t) {
            state ^= p[t];
            state *= 1099511628211ULL;
        }
    }
    void feed_i32(int32_t v) { feed(&v, sizeof v); }
    void feed_vec(const std::vector<Elem>& v) {
        feed_i32(static_cast<int32_t>(v.size()));
        if (!v.empty()) feed(v.data(), v.size() * sizeof(Elem));
    }
    std::string hex() const;
};

}  // namespace fmr
