// Command-line front end: generate sequence windows, analyze their frame
// structure, construct/certify representation operators, and run the
// randomized verification suite. Emits a single structured report on stdout
// (JSON by default), or to --out.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fibrep/fibrep.hpp"

namespace {

using namespace fibrep;

struct GlobalOpts {
    std::string format = "json";
    double tolerance = 1e-9;
    std::uint64_t seed = 0;
    std::string out;
    bool timing = false;
};

void render_text(const Json& j, std::ostream& os, int indent = 0) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object() || value.is_array()) {
                os << pad << key << ":\n";
                render_text(value, os, indent + 2);
            } else {
                os << pad << key << ": " << value.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        bool scalars = true;
        for (const auto& v : j)
            if (v.is_object() || v.is_array()) scalars = false;
        if (scalars) {
            os << pad << j.dump() << "\n";
        } else {
            for (const auto& v : j) render_text(v, os, indent);
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

void emit(const Report& report, const GlobalOpts& g) {
    Json doc = report.to_json();
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!g.out.empty()) {
        file.open(g.out);
        if (!file) throw IoError("cannot open " + g.out + " for writing");
        os = &file;
    }
    if (g.format == "text")
        render_text(doc, *os);
    else
        *os << doc.dump(2) << "\n";
    if (!*os) throw IoError("write failed");
}

int cmd_generate(const std::string& name, std::size_t n, std::size_t dim,
                 const std::string& kind, const GlobalOpts& g) {
    SequenceWindow w;
    if (name == "random") {
        WindowKind k = kind == "dependent" ? WindowKind::Dependent : WindowKind::Independent;
        w = random_window(n, dim, g.seed, k);
    } else {
        w = canonical(name, n, dim);
    }
    if (!g.out.empty()) {
        write_window(w, g.out);
        std::cout << w.label << "\n";
    } else {
        std::cout << window_to_json(w).dump(2) << "\n";
    }
    return 0;
}

int cmd_analyze(const std::string& in, const GlobalOpts& g) {
    auto start = std::chrono::steady_clock::now();
    SequenceWindow w = read_window(in);
    Report report;
    report.command = "analyze";
    report.inputs = {{"file", in}, {"tolerance", g.tolerance}};
    report.add("window", frame_report_to_json(analyze(w, g.tolerance)));
    DerivedSpec one{Scalar(1), Scalar(1), +1};
    SequenceWindow m = derive(w, one);
    if (m.size() > 0) report.add("derived_plus", frame_report_to_json(analyze(m, g.tolerance)));
    DerivedSpec minus{Scalar(1), Scalar(1), -1};
    SequenceWindow nw = derive(w, minus);
    if (nw.size() > 0) report.add("derived_minus", frame_report_to_json(analyze(nw, g.tolerance)));
    if (g.timing)
        report.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    emit(report, g);
    return 0;
}

ExactVec read_pin(const std::string& path, std::size_t dim) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    if (!j.is_array()) throw ParseError("pin file must be a JSON array of scalar strings");
    ExactVec v;
    for (const auto& cell : j) v.push_back(parse_scalar(cell.get<std::string>()));
    if (v.size() != dim) throw ParseError("pin vector length does not match window dim");
    return v;
}

int cmd_fibrep(const std::string& in, const std::string& policy, const std::string& pin_file,
               const GlobalOpts& g) {
    auto start = std::chrono::steady_clock::now();
    SequenceWindow w = read_window(in);
    Report report;
    report.command = "fibrep";
    report.inputs = {{"file", in}, {"policy", policy}};

    FibOperator op;
    if (policy == "alternating") {
        op = construct_alternating(w);
    } else if (policy == "half-f3") {
        op = construct_half_f3(w);
    } else {
        ExtensionPolicy ep = ExtensionPolicy::zero();
        if (policy == "pinned") {
            if (pin_file.empty()) {
                std::cerr << "fibrep: --policy pinned requires --pin-file\n";
                return 2;
            }
            ep = ExtensionPolicy::pinned(read_pin(pin_file, w.dim));
        } else if (policy == "half-f3-soft") {
            ep = ExtensionPolicy::half_f3();
        } else if (policy != "zero") {
            std::cerr << "fibrep: unknown policy '" << policy << "'\n";
            return 2;
        }
        ConstructOutcome outcome = construct(w, ep);
        if (!outcome.ok()) {
            report.add("certificate",
                       Json{{"exists", false}, {"witness", witness_to_json(*outcome.inconsistent)}});
            emit(report, g);
            return 0; // non-existence is an answer, not an error
        }
        op = std::move(*outcome.op);
    }

    report.add("operator", operator_to_json(op));
    report.add("verify", check_to_json(verify(w, op)));
    report.add("range", check_to_json(range_check(w, op)));
    report.add("derived_equivalence", check_to_json(check_mn_equivalence(w, op)));
    if (w.size() >= 3 && !is_zero_vec(w.vectors[0])) {
        auto bp = find_breakpoint(w);
        if (bp) report.add("containment", check_to_json(containment_check(w, op, *bp)));
    }
    if (w.tail == TailPolicy::ZeroTail) {
        report.add("norm_bound", check_to_json(norm_bound_check(w, op, g.tolerance)));
        report.add("injectivity", check_to_json(injectivity_check(w, op)));
    }
    if (auto inv = invariant_subspace_witness(w, op))
        report.add("invariant_subspace",
                   Json{{"l", inv->l}, {"basis", mat_to_json(inv->basis)}});
    if (g.timing)
        report.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    emit(report, g);
    return 0;
}

Json tally_to_json(const SuiteTally& t) {
    Json j;
    j["name"] = t.name;
    j["cases"] = t.cases;
    j["passed"] = t.passed;
    j["skipped"] = t.skipped;
    j["failed"] = t.failed;
    if (!t.first_failure.empty()) j["first_failure"] = t.first_failure;
    return j;
}

int cmd_verify_suite(std::uint64_t seeds, std::size_t max_n, std::size_t max_dim,
                     const GlobalOpts& g) {
    auto start = std::chrono::steady_clock::now();
    Report report;
    report.command = "verify-suite";
    report.inputs = {{"seeds", seeds}, {"max_n", max_n}, {"max_dim", max_dim}};
    bool all_ok = true;
    auto absorb = [&](const std::string& name, const SuiteResult& r) {
        Json arr = Json::array();
        for (const auto& t : r.tallies) arr.push_back(tally_to_json(t));
        report.add(name, std::move(arr));
        all_ok = all_ok && r.ok();
    };
    absorb("identities", run_identity_suite(seeds, max_n, max_dim));
    absorb("closed_form", run_closed_form_suite(seeds / 2 + 1, 6));
    absorb("soundness", run_soundness_suite(seeds, max_n, max_dim));
    absorb("norm_bound", run_norm_bound_suite(seeds));
    absorb("injectivity", run_injectivity_suite(seeds));
    absorb("uniqueness", run_uniqueness_suite(seeds / 2 + 1));
    report.add("all_passed", all_ok);
    if (g.timing)
        report.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    emit(report, g);
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frame-window analysis and pair-recursion operators"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--format", g.format, "Output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--tolerance", g.tolerance, "Relative slack for float checks");
    app.add_option("--seed", g.seed, "Seed for random generation");
    app.add_option("--out", g.out, "Write the report/file here instead of stdout");
    app.add_flag("--timing", g.timing, "Record wall time in the report");

    auto* gen = app.add_subcommand("generate", "Write a sequence window file");
    gen->fallthrough();
    std::string gen_name;
    std::size_t gen_n = 6, gen_dim = 6;
    std::string gen_kind = "independent";
    gen->add_option("name", gen_name,
                    "onb | ex_e1e1 | ex_e123e1 | ex_norep | ex_e2e2 | random")
        ->required();
    gen->add_option("--n", gen_n, "Window length N");
    gen->add_option("--dim", gen_dim, "Ambient dimension d");
    gen->add_option("--kind", gen_kind, "independent | dependent (random only)")
        ->check(CLI::IsMember({"independent", "dependent"}));

    auto* ana = app.add_subcommand("analyze", "Frame-theoretic report for a window file");
    ana->fallthrough();
    std::string ana_in;
    ana->add_option("file", ana_in, "Sequence window file")->required();

    auto* fib = app.add_subcommand("fibrep", "Construct or certify a representation operator");
    fib->fallthrough();
    std::string fib_in, fib_policy = "zero", fib_pin;
    fib->add_option("file", fib_in, "Sequence window file")->required();
    fib->add_option("--policy", fib_policy, "zero | half-f3 | half-f3-soft | alternating | pinned");
    fib->add_option("--pin-file", fib_pin, "JSON array of scalar strings (T f_1 target)");

    auto* suite = app.add_subcommand("verify-suite", "Run the randomized identity suite");
    suite->fallthrough();
    std::uint64_t s_seeds = 200;
    std::size_t s_max_n = 10, s_max_dim = 10;
    suite->add_option("--seeds", s_seeds, "Seeds per property");
    suite->add_option("--max-n", s_max_n, "Largest window length");
    suite->add_option("--max-dim", s_max_dim, "Largest ambient dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_generate(gen_name, gen_n, gen_dim, gen_kind, g);
        if (ana->parsed()) return cmd_analyze(ana_in, g);
        if (fib->parsed()) return cmd_fibrep(fib_in, fib_policy, fib_pin, g);
        if (suite->parsed()) return cmd_verify_suite(s_seeds, s_max_n, s_max_dim, g);
    } catch (const fibrep::UnknownName& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fibrep::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const fibrep::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const fibrep::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return 2;
}
