#include "fmr/spec_format.hpp"

#include <algorithm>
#include <sstream>

#include "fmr/constructions.hpp"

namespace fmr {

namespace {

struct Token {
    std::string text;
    int line;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            out.push_back({cur, line});
            cur.clear();
        }
    };
    for (size_t t = 0; t < text.size(); ++t) {
        char c = text[t];
        if (c == '#') {  // comment to end of line
            flush();
            while (t < text.size() && text[t] != '\n') ++t;
            ++line;
            continue;
        }
        if (c == '\n') {
            flush();
            ++line;
            continue;
        }
        if (isspace(static_cast<unsigned char>(c))) {
            flush();
            continue;
        }
        if (c == '{' || c == '}' || c == '=') {
            flush();
            out.push_back({std::string(1, c), line});
            continue;
        }
        cur.push_back(c);
    }
    flush();
    return out;
}

struct Cursor {
    const std::vector<Token>& toks;
    size_t pos = 0;

    bool done() const { return pos >= toks.size(); }
    const Token& peek() const {
        if (done()) throw ParseError(toks.empty() ? 1 : toks.back().line, "unexpected end of file");
        return toks[pos];
    }
    Token next() {
        Token t = peek();
        ++pos;
        return t;
    }
    void expect(const std::string& s) {
        Token t = next();
        if (t.text != s) throw ParseError(t.line, "expected '" + s + "', found '" + t.text + "'");
    }
    long long integer() {
        Token t = next();
        try {
            size_t used = 0;
            long long v = std::stoll(t.text, &used);
            if (used != t.text.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw ParseError(t.line, "expected an integer, found '" + t.text + "'");
        }
    }
};

const char* kRingSections[] = {"size", "zero", "one", "add", "mul"};
const char* kBimoduleSections[] = {"size", "add", "left", "right"};
const char* kProductSections[] = {"entries"};

bool is_section(const std::string& s, const char* const* names, size_t count) {
    for (size_t t = 0; t < count; ++t)
        if (s == names[t]) return true;
    return false;
}

// table { section ints... section ints... }
std::map<std::string, std::vector<long long>> parse_table(Cursor& cur, const char* const* names,
                                                          size_t count) {
    cur.expect("{");
    std::map<std::string, std::vector<long long>> sections;
    std::string active;
    while (true) {
        Token t = cur.peek();
        if (t.text == "}") {
            cur.next();
            break;
        }
        if (is_section(t.text, names, count)) {
            active = t.text;
            cur.next();
            if (sections.count(active)) throw ParseError(t.line, "duplicate section " + active);
            sections[active] = {};
            continue;
        }
        if (active.empty()) throw ParseError(t.line, "expected a table section, found '" + t.text + "'");
        sections[active].push_back(cur.integer());
    }
    return sections;
}

// Parse "name" or "name(arg)" or "table {...}" with an optional "twist N".
SlotDef parse_slot(Cursor& cur, const char* const* names, size_t count) {
    SlotDef def;
    Token t = cur.peek();
    def.line = t.line;
    def.defined = true;
    if (t.text == "table") {
        cur.next();
        def.table = parse_table(cur, names, count);
        return def;
    }
    def.named = cur.next().text;
    // Optional twist argument for residue bimodules.
    if (!cur.done() && cur.peek().text == "twist") {
        cur.next();
        def.twist = static_cast<int>(cur.integer());
    }
    return def;
}

}  // namespace

RingSpecDocument parse_spec(const std::string& text) {
    auto toks = tokenize(text);
    if (toks.empty()) throw ParseError(1, "empty document");
    Cursor cur{toks};
    cur.expect("fmring");
    RingSpecDocument doc;
    doc.format_version = static_cast<int>(cur.integer());
    if (doc.format_version != 1)
        throw ParseError(toks[0].line, "unsupported format version " +
                                           std::to_string(doc.format_version));
    cur.expect("order");
    long long order = cur.integer();
    if (order < 1 || order > 64) throw ParseError(toks[0].line, "order out of range");
    doc.order = static_cast<int>(order);
    doc.rings.resize(doc.order);
    doc.bimodules.resize(static_cast<size_t>(doc.order) * doc.order);
    doc.products.resize(static_cast<size_t>(doc.order) * doc.order * doc.order);

    bool bimodules_default = false, products_default = false;
    while (!cur.done()) {
        Token head = cur.next();
        auto index1 = [&](long long v) {
            if (v < 1 || v > doc.order)
                throw ParseError(head.line, "index " + std::to_string(v) + " out of range");
            return static_cast<int>(v - 1);
        };
        if (head.text == "ring") {
            int i = index1(cur.integer());
            cur.expect("=");
            if (doc.rings[i].defined) throw ParseError(head.line, "ring defined twice");
            doc.rings[i] = parse_slot(cur, kRingSections, 5);
        } else if (head.text == "bimodule") {
            int i = index1(cur.integer());
            int j = index1(cur.integer());
            if (i == j) throw ParseError(head.line, "diagonal bimodules are implicit");
            cur.expect("=");
            if (doc.bimodule(i, j).defined) throw ParseError(head.line, "bimodule defined twice");
            doc.bimodule(i, j) = parse_slot(cur, kBimoduleSections, 4);
        } else if (head.text == "product") {
            int i = index1(cur.integer());
            int j = index1(cur.integer());
            int k = index1(cur.integer());
            if (i == j || j == k)
                throw ParseError(head.line, "products with repeated adjacent indices are implicit");
            cur.expect("=");
            if (doc.product(i, j, k).defined) throw ParseError(head.line, "product defined twice");
            doc.product(i, j, k) = parse_slot(cur, kProductSections, 1);
        } else if (head.text == "bimodules") {
            cur.expect("default");
            cur.expect("zero");
            bimodules_default = true;
        } else if (head.text == "products") {
            cur.expect("default");
            cur.expect("zero");
            products_default = true;
        } else {
            throw ParseError(head.line, "unknown directive '" + head.text + "'");
        }
    }

    // Structural completeness.
    for (int i = 0; i < doc.order; ++i)
        if (!doc.rings[i].defined)
            throw ParseError(1, "ring " + std::to_string(i + 1) + " is not defined");
    for (int i = 0; i < doc.order; ++i)
        for (int j = 0; j < doc.order; ++j) {
            if (i == j) continue;
            if (!doc.bimodule(i, j).defined) {
                if (!bimodules_default)
                    throw ParseError(1, "bimodule " + std::to_string(i + 1) + " " +
                                            std::to_string(j + 1) + " is not defined");
                doc.bimodule(i, j).named = "zero";
                doc.bimodule(i, j).defined = true;
            }
            for (int k = 0; k < doc.order; ++k) {
                if (j == k || i == j) continue;
                if (!doc.product(i, j, k).defined) {
                    if (!products_default)
                        throw ParseError(1, "product " + std::to_string(i + 1) + " " +
                                                std::to_string(j + 1) + " " +
                                                std::to_string(k + 1) + " is not defined");
                    doc.product(i, j, k).named = "zero";
                    doc.product(i, j, k).defined = true;
                }
            }
        }
    return doc;
}

namespace {

const std::vector<long long>& table_section(const SlotDef& def, const std::string& name,
                                            size_t expected) {
    auto it = def.table.find(name);
    if (it == def.table.end())
        throw ParseError(def.line, "table block is missing section '" + name + "'");
    if (it->second.size() != expected)
        throw ParseError(def.line, "section '" + name + "' has " +
                                       std::to_string(it->second.size()) + " entries, expected " +
                                       std::to_string(expected));
    return it->second;
}

std::vector<Elem> to_elems(const std::vector<long long>& v) {
    std::vector<Elem> out(v.size());
    for (size_t t = 0; t < v.size(); ++t) out[t] = static_cast<Elem>(v[t]);
    return out;
}

// Named ring generators; delegates to the constructions resolver, adding the
// source line to the diagnostic.
RingPtr resolve_ring_name(const std::string& name, int line) {
    try {
        return named_ring(name);
    } catch (const UnresolvedReference& e) {
        throw UnresolvedReference(e.name, std::string(e.what()) + " (line " +
                                              std::to_string(line) + ")");
    }
}

}  // namespace

FormalRingPtr build_from_document(const RingSpecDocument& doc) {
    const int n = doc.order;
    FormalMatrixRing::Spec spec(n);

    // Share ring objects between identical definitions so that bimodule wiring
    // (which requires shared rings) works across slots.
    std::map<std::string, RingPtr> named_cache;
    std::map<uint64_t, RingPtr> table_cache;
    for (int i = 0; i < n; ++i) {
        const SlotDef& def = doc.rings[i];
        if (!def.named.empty()) {
            auto it = named_cache.find(def.named);
            if (it == named_cache.end())
                it = named_cache.emplace(def.named, resolve_ring_name(def.named, def.line)).first;
            spec.diagonal[i] = it->second;
        } else {
            const long long size = table_section(def, "size", 1)[0];
            if (size < 1 || size > 4096) throw ParseError(def.line, "ring size out of range");
            const size_t nn = static_cast<size_t>(size) * size;
            auto add = to_elems(table_section(def, "add", nn));
            auto mul = to_elems(table_section(def, "mul", nn));
            Elem zero = static_cast<Elem>(table_section(def, "zero", 1)[0]);
            Elem one = static_cast<Elem>(table_section(def, "one", 1)[0]);
            Fnv1a64 h;
            h.feed_i32(static_cast<int32_t>(size));
            h.feed_i32(zero);
            h.feed_i32(one);
            h.feed_vec(add);
            h.feed_vec(mul);
            auto it = table_cache.find(h.state);
            if (it == table_cache.end()) {
                RingPtr r = FiniteRing::make(static_cast<int>(size), std::move(add), std::move(mul),
                                             zero, one, {}, "table@" + std::to_string(def.line));
                it = table_cache.emplace(h.state, std::move(r)).first;
            }
            spec.diagonal[i] = it->second;
        }
    }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const SlotDef& def = doc.bimodules[static_cast<size_t>(i) * n + j];
            BimodulePtr& slot = spec.bimodules[static_cast<size_t>(i) * n + j];
            const RingPtr& Ri = spec.diagonal[i];
            const RingPtr& Rj = spec.diagonal[j];
            if (def.named == "zero") {
                slot = FiniteBimodule::zero(Ri, Rj);
            } else if (def.named.rfind("ring", 0) == 0) {
                if (Ri.get() != Rj.get())
                    throw UnresolvedReference(def.named,
                                              "ring(i) bimodule needs identical diagonal rings "
                                              "(line " + std::to_string(def.line) + ")");
                slot = FiniteBimodule::regular(Ri);
            } else if (def.named.rfind("residue", 0) == 0) {
                slot = residue_bimodule(Ri, Rj, def.twist);
            } else if (def.named.empty()) {
                const long long size = table_section(def, "size", 1)[0];
                if (size < 1 || size > 4096) throw ParseError(def.line, "bimodule size out of range");
                auto add = to_elems(table_section(def, "add", static_cast<size_t>(size) * size));
                auto left =
                    to_elems(table_section(def, "left", static_cast<size_t>(Ri->size()) * size));
                auto right =
                    to_elems(table_section(def, "right", static_cast<size_t>(size) * Rj->size()));
                slot = FiniteBimodule::make(Ri, Rj, static_cast<int>(size), std::move(add),
                                            std::move(left), std::move(right));
            } else {
                throw UnresolvedReference(def.named, "unknown bimodule generator '" + def.named +
                                                         "' (line " + std::to_string(def.line) + ")");
            }
        }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k) continue;
                const SlotDef& def = doc.products[(static_cast<size_t>(i) * n + j) * n + k];
                const FiniteBimodule& Bij = *spec.bimodules[static_cast<size_t>(i) * n + j];
                const FiniteBimodule& Bjk = *spec.bimodules[static_cast<size_t>(j) * n + k];
                const FiniteBimodule& Bik = *spec.bimodules[static_cast<size_t>(i) * n + k];
                const size_t cells = static_cast<size_t>(Bij.size()) * Bjk.size();
                if (def.named == "zero") {
                    continue;  // build() defaults missing tables to zero
                } else if (def.named == "action") {
                    if (!Bij.tables_equal(*FiniteBimodule::regular(spec.diagonal[i])) ||
                        !Bjk.tables_equal(Bik))
                        throw UnresolvedReference(
                            "action", "action product needs B_ij = ring and B_jk = B_ik (line " +
                                          std::to_string(def.line) + ")");
                    std::vector<Elem> t(cells);
                    for (Elem a = 0; a < Bij.size(); ++a)
                        for (Elem b = 0; b < Bjk.size(); ++b)
                            t[static_cast<size_t>(a) * Bjk.size() + b] = Bjk.lact(a, b);
                    spec.product(i, j, k) = std::move(t);
                } else if (def.named == "residue-mult") {
                    // All three carriers are residue fields of the same size;
                    // multiply through the left ring's residue field.
                    auto res = local_residue(spec.diagonal[i]);
                    if (!res || Bij.size() != res->field->size() || Bjk.size() != Bij.size() ||
                        Bik.size() != Bij.size())
                        throw UnresolvedReference("residue-mult",
                                                  "residue-mult needs residue bimodules in all "
                                                  "three slots (line " +
                                                      std::to_string(def.line) + ")");
                    const FiniteRing& M = *res->field;
                    std::vector<Elem> t(cells);
                    for (Elem a = 0; a < Bij.size(); ++a)
                        for (Elem b = 0; b < Bjk.size(); ++b)
                            t[static_cast<size_t>(a) * Bjk.size() + b] = M.mul(a, b);
                    spec.product(i, j, k) = std::move(t);
                } else if (def.named.empty()) {
                    spec.product(i, j, k) = to_elems(table_section(def, "entries", cells));
                } else {
                    throw UnresolvedReference(def.named, "unknown product generator '" + def.named +
                                                             "' (line " + std::to_string(def.line) +
                                                             ")");
                }
            }
    return FormalMatrixRing::build(std::move(spec));
}

namespace {

void emit_ints(std::ostringstream& os, const std::vector<Elem>& v, int row_len, int indent) {
    for (size_t t = 0; t < v.size(); ++t) {
        if (t % row_len == 0) {
            os << "\n";
            for (int s = 0; s < indent; ++s) os << ' ';
        } else {
            os << ' ';
        }
        os << v[t];
    }
}

}  // namespace

std::string emit_spec(const FormalRingPtr& ring) {
    const FormalMatrixRing& R = *ring;
    const int n = R.order();
    std::ostringstream os;
    os << "fmring 1\norder " << n << "\n";
    for (int i = 0; i < n; ++i) {
        const FiniteRing& Ri = *R.ring(i);
        os << "\nring " << i + 1 << " = table { size " << Ri.size() << " zero " << Ri.zero()
           << " one " << Ri.one() << "\n  add";
        emit_ints(os, Ri.add_table(), Ri.size(), 4);
        os << "\n  mul";
        emit_ints(os, Ri.mul_table(), Ri.size(), 4);
        os << "\n}\n";
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const FiniteBimodule& B = *R.bimodule(i, j);
            if (B.is_zero()) {
                os << "bimodule " << i + 1 << " " << j + 1 << " = zero\n";
                continue;
            }
            os << "bimodule " << i + 1 << " " << j + 1 << " = table { size " << B.size()
               << "\n  add";
            emit_ints(os, B.add_table(), B.size(), 4);
            os << "\n  left";
            {
                std::vector<Elem> la(static_cast<size_t>(R.ring(i)->size()) * B.size());
                for (Elem r = 0; r < R.ring(i)->size(); ++r)
                    for (Elem m = 0; m < B.size(); ++m)
                        la[static_cast<size_t>(r) * B.size() + m] = B.lact(r, m);
                emit_ints(os, la, B.size(), 4);
            }
            os << "\n  right";
            {
                std::vector<Elem> ra(static_cast<size_t>(B.size()) * R.ring(j)->size());
                for (Elem m = 0; m < B.size(); ++m)
                    for (Elem r = 0; r < R.ring(j)->size(); ++r)
                        ra[static_cast<size_t>(m) * R.ring(j)->size() + r] = B.ract(m, r);
                emit_ints(os, ra, R.ring(j)->size(), 4);
            }
            os << "\n}\n";
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k) continue;
                const FiniteBimodule& Bij = *R.bimodule(i, j);
                const FiniteBimodule& Bjk = *R.bimodule(j, k);
                const FiniteBimodule& Bik = *R.bimodule(i, k);
                bool zero = true;
                std::vector<Elem> t(static_cast<size_t>(Bij.size()) * Bjk.size());
                for (Elem a = 0; a < Bij.size(); ++a)
                    for (Elem b = 0; b < Bjk.size(); ++b) {
                        Elem v = R.prod(i, j, k, a, b);
                        t[static_cast<size_t>(a) * Bjk.size() + b] = v;
                        if (v != Bik.zero_elem()) zero = false;
                    }
                if (zero) {
                    os << "product " << i + 1 << " " << j + 1 << " " << k + 1 << " = zero\n";
                } else {
                    os << "product " << i + 1 << " " << j + 1 << " " << k + 1
                       << " = table {\n  entries";
                    emit_ints(os, t, Bjk.size(), 4);
                    os << "\n}\n";
                }
            }
    return os.str();
}

std::string spec_hash(const FormalRingPtr& ring) {
    std::string text = emit_spec(ring);
    Fnv1a64 h;
    h.feed(text.data(), text.size());
    return "fnv1a64:" + h.hex();
}

}  // namespace fmr
