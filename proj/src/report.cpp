#include "fmr/report.hpp"

#include <sstream>

#include <json.hpp>

#include "fmr/spec_format.hpp"

namespace fmr {

namespace {

using nlohmann::json;

json verdict_json(const ConditionVerdict& v) {
    json out;
    out["pass"] = v.pass;
    if (!v.witness.empty()) out["witness"] = v.witness;
    if (!v.note.empty()) out["note"] = v.note;
    return out;
}

json subset_json(const SubmoduleSet& s) {
    json out;
    out["size"] = s.size();
    out["elements"] = s.elems;
    return out;
}

}  // namespace

std::string report_json(const FormalRingPtr& ring, const AnalysisReport& report,
                        const ReportOptions& opts) {
    const FormalMatrixRing& R = *ring;
    json out;
    out["schema_version"] = 1;
    out["input_hash"] = spec_hash(ring);
    out["order"] = report.order;
    {
        json sizes = json::array();
        for (int i = 0; i < R.order(); ++i) {
            json row = json::array();
            for (int j = 0; j < R.order(); ++j) row.push_back(R.bimodule(i, j)->size());
            sizes.push_back(row);
        }
        out["bimodule_sizes"] = sizes;
    }
    out["is_basic"] = report.is_basic;
    out["multiplicities"] = report.multiplicities;
    if (report.nakayama) {
        json nk;
        std::vector<int> imgs;
        for (int v : report.nakayama->images) imgs.push_back(v + 1);
        nk["images"] = imgs;
        nk["cycles"] = report.nakayama->cycle_string();
        out["nakayama"] = nk;
    } else {
        out["nakayama"] = nullptr;
    }
    {
        const CriterionReport& c = report.criterion;
        json crit;
        crit["permutation"] = c.pi.cycle_string();
        crit["pass"] = c.criterion_pass;
        json per_index = json::array();
        for (int i = 0; i < report.order; ++i) {
            json e;
            e["index"] = i + 1;
            e["cond2"] = verdict_json(c.cond2[i]);
            e["cond2p"] = verdict_json(c.cond2p[i]);
            json c1 = json::array(), c1p = json::array(), cb = json::array(), cbp = json::array();
            for (int j = 0; j < report.order; ++j) {
                if (j != c.pi(i)) {
                    json v = verdict_json(c.cond1[i][j]);
                    v["slot"] = j + 1;
                    c1.push_back(v);
                    json vb = verdict_json(c.cond_b[i][j]);
                    vb["slot"] = j + 1;
                    cb.push_back(vb);
                }
                if (j != c.pi(i)) {
                    json v = verdict_json(c.cond1p[i][j]);
                    v["slot"] = j + 1;
                    c1p.push_back(v);
                }
                if (j != i) {
                    json vb = verdict_json(c.cond_bp[i][j]);
                    vb["slot"] = j + 1;
                    cbp.push_back(vb);
                }
            }
            e["cond1"] = c1;
            e["cond1p"] = c1p;
            e["cond_a"] = verdict_json(c.cond_a[i]);
            e["cond_ap"] = verdict_json(c.cond_ap[i]);
            e["cond_b"] = cb;
            e["cond_bp"] = cbp;
            e["N_right"] = subset_json(c.N_right[i]);
            e["N_left"] = subset_json(c.N_left[i]);
            e["T_right"] = subset_json(c.T_right[i]);
            e["T_left"] = subset_json(c.T_left[i]);
            per_index.push_back(e);
        }
        crit["per_index"] = per_index;
        crit["essential_right"] = c.essential_right_pass;
        crit["essential_left"] = c.essential_left_pass;
        out["criterion"] = crit;
    }
    out["right_socle_essential"] = report.right_socle_essential;
    out["left_socle_essential"] = report.left_socle_essential;
    out["socles_coincide"] = report.socles_coincide;
    out["classification"] = classification_name(report.classification);
    {
        json blocks = json::array();
        for (const auto& b : report.blocks) {
            json blk = json::array();
            for (int v : b) blk.push_back(v + 1);
            blocks.push_back(blk);
        }
        out["blocks"] = blocks;
    }
    if (opts.theorems && report.nakayama) {
        StructureVerdicts sv = verify_structure_props(ring, *report.nakayama);
        json th;
        th["radical_containment"] = verdict_json(sv.radical_containment);
        th["pairing_faithful"] = verdict_json(sv.pairing_faithful);
        th["trivial_ring_cycle"] = verdict_json(sv.trivial_ring_cycle);
        th["triangular_symmetry"] = verdict_json(sv.triangular_symmetry);
        th["shifted_diagonal_support"] = verdict_json(sv.shifted_diagonal_support);
        th["residue_iso_cycles"] = verdict_json(sv.residue_iso_cycles);
        out["theorems"] = th;
    }
    out["timing_ms"] = opts.include_timing ? json(opts.timing_ms) : json(nullptr);
    {
        json meta;
        meta["total_size_log2_bound"] = R.total_size();
        out["size_metadata"] = meta;
    }
    return out.dump(2) + "\n";
}

std::string report_human(const FormalRingPtr& ring, const AnalysisReport& report) {
    const FormalMatrixRing& R = *ring;
    std::ostringstream os;
    os << "order " << report.order << " formal matrix ring";
    os << ", |R| = " << R.total_size() << "\n";
    os << "diagonal:";
    for (int i = 0; i < R.order(); ++i) {
        const std::string& nm = R.ring(i)->name();
        os << " " << (nm.empty() ? ("R" + std::to_string(i + 1)) : nm) << "(" << R.ring(i)->size()
           << ")";
    }
    os << "\n";
    os << "basic: " << (report.is_basic ? "yes" : "no") << "\n";
    if (report.nakayama)
        os << "nakayama permutation: " << report.nakayama->cycle_string() << "\n";
    else
        os << "nakayama permutation: none\n";
    os << "criterion for " << report.criterion.pi.cycle_string() << ": "
       << (report.criterion.criterion_pass ? "pass" : "FAIL") << "\n";
    if (!report.criterion.criterion_pass) {
        for (int i = 0; i < report.order; ++i) {
            const auto& c = report.criterion;
            if (!c.cond2[i].pass)
                os << "  (2)  fails at i=" << i + 1 << ": " << c.cond2[i].note << "\n";
            if (!c.cond2p[i].pass)
                os << "  (2') fails at i=" << i + 1 << ": " << c.cond2p[i].note << "\n";
            for (int j = 0; j < report.order; ++j) {
                if (!c.cond1[i][j].pass)
                    os << "  (1)  fails at i=" << i + 1 << ", j=" << j + 1 << " (witness "
                       << c.cond1[i][j].witness.back() << ")\n";
                if (!c.cond1p[i][j].pass)
                    os << "  (1') fails at i=" << i + 1 << ", j=" << j + 1 << " (witness "
                       << c.cond1p[i][j].witness.back() << ")\n";
            }
        }
    }
    os << "right socle essential: " << (report.right_socle_essential ? "yes" : "no")
       << ", left socle essential: " << (report.left_socle_essential ? "yes" : "no") << "\n";
    if (report.nakayama)
        os << "socles coincide: " << (report.socles_coincide ? "yes" : "no") << "\n";
    os << "classification: " << classification_name(report.classification) << "\n";
    os << "blocks:";
    for (const auto& b : report.blocks) {
        os << " {";
        for (size_t t = 0; t < b.size(); ++t) os << (t ? " " : "") << b[t] + 1;
        os << "}";
    }
    os << (report.blocks.size() == 1 ? " (indecomposable)" : " (decomposable)") << "\n";
    return os.str();
}

}  // namespace fmr
