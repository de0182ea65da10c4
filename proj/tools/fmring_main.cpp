// fmring: construct, validate and analyze finite formal matrix rings.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fmr/enumerate.hpp"
#include "fmr/report.hpp"
#include "fmr/spec_format.hpp"

namespace {

using namespace fmr;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("IO", "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("IO", "cannot write " + path);
    out << text;
}

FormalRingPtr load_ring(const std::string& path) {
    return build_from_document(parse_spec(read_file(path)));
}

void apply_limit_overrides(long long row_bound, long long flatten_bound) {
    if (row_bound > 0) Limits::global().row_module_bound = row_bound;
    if (flatten_bound > 0) Limits::global().flatten_bound = flatten_bound;
}

int run(int argc, char** argv) {
    CLI::App app{"finite formal matrix rings: validation, Nakayama permutations, glueing"};
    app.require_subcommand(1);

    long long row_bound = 0, flatten_bound = 0;
    app.add_option("--row-bound", row_bound, "override the row-module size guard");
    app.add_option("--flatten-bound", flatten_bound, "override the flatten size guard");

    // validate
    auto* validate = app.add_subcommand("validate", "build a spec file, report diagnostics");
    std::string validate_path;
    validate->add_option("spec", validate_path, "ring spec file")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "detect and check Nakayama permutations");
    std::string analyze_path, analyze_perm;
    bool analyze_json = false, analyze_essential = false, analyze_theorems = false,
         analyze_timing = false;
    analyze->add_option("spec", analyze_path, "ring spec file")->required();
    analyze->add_option("--permutation", analyze_perm,
                        "check this permutation (cycles like \"(1 2)(3)\" or images \"2,1,3\")");
    analyze->add_flag("--essential", analyze_essential, "insist on the essential-socle criterion");
    analyze->add_flag("--theorems", analyze_theorems, "include structural-theorem verdicts");
    analyze->add_flag("--json", analyze_json, "emit the JSON report instead of the summary");
    analyze->add_flag("--timings", analyze_timing, "include wall time in the JSON report");

    // generate
    auto* generate = app.add_subcommand("generate", "emit a spec for a named construction");
    std::string gen_kind, gen_base = "Z/4", gen_out;
    int gen_n = 3, gen_q = 2, gen_bound = 6;
    std::vector<int> gen_shifts;
    generate->add_option("kind", gen_kind, "cycle | serial | support | trivext | product")
        ->required();
    generate->add_option("--base", gen_base, "base ring name (cycle, support, trivext, product)");
    generate->add_option("--n", gen_n, "order");
    generate->add_option("--q", gen_q, "field size (serial)");
    generate->add_option("--bound", gen_bound, "path-length bound (serial)");
    generate->add_option("--shifts", gen_shifts, "extra shifted diagonals (support)");
    generate->add_option("-o,--out", gen_out, "output file (default stdout)");

    // glue
    auto* glue_cmd = app.add_subcommand("glue", "glue two rings along their permutations");
    std::string glue_left, glue_right, glue_out, glue_report_path;
    int glue_twist = 0;
    std::vector<int> glue_I, glue_J;
    bool glue_json = false;
    glue_cmd->add_option("left", glue_left, "left ring spec")->required();
    glue_cmd->add_option("right", glue_right, "right ring spec")->required();
    glue_cmd->add_option("--twist", glue_twist, "Frobenius twist for the compatible fields");
    glue_cmd->add_option("--left-corner", glue_I, "glue only these left indices (1-based)");
    glue_cmd->add_option("--right-corner", glue_J, "glue only these right indices (1-based)");
    glue_cmd->add_option("-o,--out", glue_out, "write the glued spec here");
    glue_cmd->add_option("--report", glue_report_path, "write the JSON report here");
    glue_cmd->add_flag("--json", glue_json, "print the JSON report");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "equivalence suites over ring families");
    EnumerationJob job;
    std::string enum_mode = "exhaustive", enum_dump;
    std::vector<std::string> enum_menu;
    uint64_t enum_seed = 1;
    int enum_count = 500, enum_order = 2, enum_maxbim = 4;
    bool enum_json = false, enum_fail = false;
    enumerate->add_option("--mode", enum_mode, "exhaustive | random");
    enumerate->add_option("--order", enum_order, "ring order");
    enumerate->add_option("--max-bimodule", enum_maxbim, "off-diagonal carrier bound");
    enumerate->add_option("--menu", enum_menu, "diagonal ring menu");
    enumerate->add_option("--seed", enum_seed, "random seed");
    enumerate->add_option("--count", enum_count, "random sample count");
    enumerate->add_option("--dump-dir", enum_dump, "directory for discrepancy reproducers");
    enumerate->add_flag("--json", enum_json, "emit a JSON census");
    enumerate->add_flag("--fail-on-discrepancy", enum_fail, "exit nonzero on any discrepancy");

    CLI11_PARSE(app, argc, argv);
    apply_limit_overrides(row_bound, flatten_bound);

    if (validate->parsed()) {
        FormalRingPtr ring = load_ring(validate_path);
        std::cout << "ok: order " << ring->order() << ", |R| = " << ring->total_size()
                  << ", hash " << spec_hash(ring) << "\n";
        return 0;
    }

    if (analyze->parsed()) {
        auto t0 = std::chrono::steady_clock::now();
        FormalRingPtr ring = load_ring(analyze_path);
        std::optional<Permutation> hint;
        if (!analyze_perm.empty()) {
            hint = parse_permutation(analyze_perm, ring->order());
            if (!hint) throw Error("IO", "cannot parse permutation '" + analyze_perm + "'");
        }
        AnalysisReport report = classify(ring, hint);
        if (analyze_essential && hint) check_essential_criterion(ring, *hint);
        auto t1 = std::chrono::steady_clock::now();
        if (analyze_json) {
            ReportOptions opts;
            opts.theorems = analyze_theorems;
            opts.include_timing = analyze_timing;
            opts.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            std::cout << report_json(ring, report, opts);
        } else {
            std::cout << report_human(ring, report);
            if (analyze_theorems && report.nakayama) {
                StructureVerdicts sv = verify_structure_props(ring, *report.nakayama);
                auto line = [&](const char* name, const ConditionVerdict& v) {
                    std::cout << "theorem " << name << ": " << (v.pass ? "pass" : "FAIL");
                    if (!v.note.empty()) std::cout << " (" << v.note << ")";
                    std::cout << "\n";
                };
                line("radical-containment", sv.radical_containment);
                line("pairing-faithful", sv.pairing_faithful);
                line("trivial-ring-cycle", sv.trivial_ring_cycle);
                line("triangular-symmetry", sv.triangular_symmetry);
                line("shifted-diagonal-support", sv.shifted_diagonal_support);
                line("residue-iso-cycles", sv.residue_iso_cycles);
            }
        }
        return 0;
    }

    if (generate->parsed()) {
        FormalRingPtr ring;
        if (gen_kind == "cycle") {
            RingPtr base = named_ring(gen_base);
            ring = cycle_ring(base, envelope_bimodule(base), gen_n);
        } else if (gen_kind == "serial") {
            ring = serial_quiver_algebra(gen_q, gen_n, gen_bound);
        } else if (gen_kind == "support") {
            ring = support_pattern_ring(gen_n, gen_shifts, named_ring(gen_base));
        } else if (gen_kind == "trivext") {
            ring = as_order_one(trivial_extension(named_ring(gen_base)));
        } else if (gen_kind == "product") {
            // Direct product of n copies of the base: zero off-diagonal blocks.
            RingPtr base = named_ring(gen_base);
            FormalMatrixRing::Spec spec(gen_n);
            for (int i = 0; i < gen_n; ++i) spec.diagonal[i] = base;
            for (int i = 0; i < gen_n; ++i)
                for (int j = 0; j < gen_n; ++j)
                    if (i != j)
                        spec.bimodules[static_cast<size_t>(i) * gen_n + j] =
                            FiniteBimodule::zero(base, base);
            ring = FormalMatrixRing::build(std::move(spec));
        } else {
            throw Error("IO", "unknown generator '" + gen_kind + "'");
        }
        std::string text = emit_spec(ring);
        if (gen_out.empty())
            std::cout << text;
        else
            write_file(gen_out, text);
        return 0;
    }

    if (glue_cmd->parsed()) {
        FormalRingPtr left = load_ring(glue_left);
        FormalRingPtr right = load_ring(glue_right);
        // The compatible fields are the (isomorphic) residue fields of the
        // glued corners, twisted as requested.
        auto res = local_residue(left->ring(glue_I.empty() ? 0 : glue_I.front() - 1));
        CompatibleFieldPair fields = compatible_finite_fields(res->field->size(), glue_twist);
        FormalRingPtr glued;
        if (glue_I.empty() && glue_J.empty()) {
            glued = glue(make_glue_spec(left, right, fields));
        } else {
            std::vector<int> I = glue_I, J = glue_J;
            if (I.empty()) {
                I.resize(left->order());
                for (int i = 0; i < left->order(); ++i) I[i] = i + 1;
            }
            if (J.empty()) {
                J.resize(right->order());
                for (int j = 0; j < right->order(); ++j) J[j] = j + 1;
            }
            for (int& v : I) --v;
            for (int& v : J) --v;
            glued = glue_general(left, right, I, J, fields);
        }
        AnalysisReport report = classify(glued);
        if (!glue_out.empty()) write_file(glue_out, emit_spec(glued));
        std::string json_text = report_json(glued, report);
        if (!glue_report_path.empty()) write_file(glue_report_path, json_text);
        if (glue_json)
            std::cout << json_text;
        else
            std::cout << report_human(glued, report);
        return 0;
    }

    if (enumerate->parsed()) {
        job.mode = enum_mode == "random" ? EnumerationJob::Mode::Random
                                         : EnumerationJob::Mode::Exhaustive;
        job.order = enum_order;
        job.max_bimodule = enum_maxbim;
        if (!enum_menu.empty()) job.menu = enum_menu;
        if (job.mode == EnumerationJob::Mode::Random && enum_menu.empty())
            job.menu = {"GF(2)", "Z/4"};
        job.seed = enum_seed;
        job.count = enum_count;
        Census census = run_enumeration(job);
        if (!enum_dump.empty() && !census.discrepancies.empty()) {
            std::filesystem::create_directories(enum_dump);
            int idx = 0;
            for (const auto& d : census.discrepancies)
                write_file(enum_dump + "/discrepancy-" + std::to_string(idx++) + ".ring",
                           "# " + d.kind + ": " + d.detail + "\n" + d.spec_text);
        }
        if (enum_json) {
            std::ostringstream os;
            os << "{\n  \"seed\": " << census.seed << ",\n  \"rings_built\": " << census.rings_built
               << ",\n  \"rings_checked\": " << census.rings_checked
               << ",\n  \"duplicates\": " << census.duplicates
               << ",\n  \"nonbasic\": " << census.nonbasic
               << ",\n  \"with_nakayama\": " << census.with_nakayama
               << ",\n  \"discrepancies\": " << census.discrepancies.size() << "\n}\n";
            std::cout << os.str();
        } else {
            std::cout << "seed " << census.seed << ": built " << census.rings_built
                      << ", checked " << census.rings_checked << " (duplicates "
                      << census.duplicates << ", non-basic " << census.nonbasic << "), with "
                      << census.with_nakayama << " Nakayama rings, discrepancies "
                      << census.discrepancies.size() << "\n";
            for (const auto& d : census.discrepancies)
                std::cout << "  DISCREPANCY [" << d.kind << "] " << d.detail << "\n";
        }
        return enum_fail && !census.discrepancies.empty() ? 1 : 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const fmr::Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return fmr::exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
