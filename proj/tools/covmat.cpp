// covmat — covering-based rough set toolkit.
//
// Subcommands: validate, approx, update, reduct, gen, bench, convert.
// Exit codes: 0 success, 1 domain error (validation failures, shape or
// universe mismatches), 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covmat/benchgen.hpp"
#include "covmat/reduct.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << content;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
    } else {
        write_file(path, content);
    }
}

bool test_mode() {
    const char* value = std::getenv("COVMAT_TEST");
    return value != nullptr && std::string(value) == "1";
}

covmat::SubsetVector parse_label_set(const std::string& csv, const covmat::Universe& u) {
    covmat::SubsetVector x(u.size());
    std::stringstream ss(csv);
    std::string label;
    while (std::getline(ss, label, ',')) {
        if (label.empty()) {
            continue;
        }
        const auto idx = u.index_of(label);
        if (!idx) {
            throw std::runtime_error("unknown object label \"" + label + "\"");
        }
        x.set(*idx);
    }
    return x;
}

std::vector<std::string> subset_labels(const covmat::SubsetVector& x,
                                       const covmat::Universe& u) {
    std::vector<std::string> out;
    for (const std::size_t i : x.indices()) {
        out.push_back(u.labels[i]);
    }
    return out;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const std::string& p : parts) {
        if (!out.empty()) {
            out += ",";
        }
        out += p;
    }
    return out;
}

covmat::SystemDocument load_system(const std::string& path) {
    covmat::SystemDocument doc = covmat::parse_system(read_file(path));
    const auto violations = covmat::validate(doc.system);
    if (!violations.empty()) {
        throw std::runtime_error(path + ": " + covmat::to_string(violations.front()));
    }
    return doc;
}

struct ApproxOptions {
    std::string system_path;
    std::string set_csv;
    std::string op = "second";
    std::string dump_gamma, dump_pi, dump_matrix;
    bool as_json = false;
};

int run_approx(const ApproxOptions& opt) {
    const covmat::SystemDocument doc = load_system(opt.system_path);
    const covmat::CoveringSystem& s = doc.system;
    const covmat::SubsetVector x = parse_label_set(opt.set_csv, s.universe);

    if (!opt.dump_matrix.empty()) {
        write_file(opt.dump_matrix, covmat::dump_text(covmat::system_matrix(s)));
    }
    if (!opt.dump_gamma.empty()) {
        write_file(opt.dump_gamma, covmat::dump_text(covmat::gamma(s).m));
    }
    if (!opt.dump_pi.empty()) {
        write_file(opt.dump_pi, covmat::dump_text(covmat::pi(s).m));
    }

    const covmat::ApproxPair pair = opt.op == "second"
                                        ? covmat::second_approx(covmat::gamma(s), x)
                                        : covmat::sixth_approx(covmat::pi(s), x);
    const auto lower = subset_labels(pair.lower, s.universe);
    const auto upper = subset_labels(pair.upper, s.universe);
    if (opt.as_json) {
        json out;
        out["op"] = opt.op;
        out["set"] = subset_labels(x, s.universe);
        out["lower"] = lower;
        out["upper"] = upper;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "lower: " << join(lower) << "\n";
        std::cout << "upper: " << join(upper) << "\n";
    }
    return 0;
}

struct UpdateOptions {
    std::string system_path;
    std::vector<std::string> add_paths;
    std::vector<std::string> remove_names;
    std::string set_csv;
    std::string op = "second";
};

int run_update(const UpdateOptions& opt) {
    const covmat::SystemDocument doc = load_system(opt.system_path);
    const covmat::CoveringSystem& s = doc.system;
    const covmat::SubsetVector x = parse_label_set(opt.set_csv, s.universe);

    std::vector<covmat::SystemEdit> edits;
    for (const std::string& path : opt.add_paths) {
        edits.push_back({covmat::SystemEdit::Action::Add,
                         covmat::parse_covering(read_file(path), s.universe), ""});
    }
    for (const std::string& name : opt.remove_names) {
        edits.push_back({covmat::SystemEdit::Action::Remove, {}, name});
    }

    const covmat::CharKind kind =
        opt.op == "second" ? covmat::CharKind::Type1 : covmat::CharKind::Type2;
    const covmat::EditOutcome outcome = covmat::apply_edits(s, edits, kind);
    const covmat::ApproxPair pair = opt.op == "second"
                                        ? covmat::second_approx(outcome.characteristic, x)
                                        : covmat::sixth_approx(outcome.characteristic, x);

    json out;
    out["op"] = opt.op;
    out["set"] = subset_labels(x, s.universe);
    out["lower"] = subset_labels(pair.lower, s.universe);
    out["upper"] = subset_labels(pair.upper, s.universe);
    out["audit"] = {{"cells_copied", outcome.audit.cells_copied},
                    {"cells_recomputed", outcome.audit.cells_recomputed}};
    json names = json::array();
    for (const covmat::Covering& c : outcome.system.coverings) {
        names.push_back(c.name);
    }
    out["coverings"] = std::move(names);
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct ReductOptions {
    std::string system_path;
    std::string kind = "type1";
    std::string add_path;
    std::size_t bound = 20;
    bool as_json = false;
};

int run_reduct(const ReductOptions& opt) {
    const covmat::SystemDocument doc = load_system(opt.system_path);
    if (!doc.has_decision()) {
        throw std::runtime_error(opt.system_path +
                                 ": document has no \"decision\" coverings");
    }
    const covmat::DecisionSystem ds = doc.decision_system();
    const covmat::CharKind kind =
        opt.kind == "type1" ? covmat::CharKind::Type1 : covmat::CharKind::Type2;
    covmat::ReductReport report = covmat::find_reducts(ds, kind, opt.bound);
    if (!opt.add_path.empty()) {
        const covmat::Covering added =
            covmat::parse_covering(read_file(opt.add_path), ds.universe);
        report = covmat::recheck_after_add(ds, report, added, opt.bound);
    }
    if (opt.as_json) {
        json out;
        out["kind"] = opt.kind;
        out["reducts"] = report.reducts;
        out["tested"] = report.subsets_tested;
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& reduct : report.reducts) {
            std::cout << join(reduct) << "\n";
        }
        std::cout << "tested=" << report.subsets_tested
                  << " reducts=" << report.reducts.size() << "\n";
    }
    return 0;
}

struct GenOptions {
    covmat::GenSpec spec;
    std::string out_path;
};

int run_gen(const GenOptions& opt) {
    const covmat::CoveringSystem s = covmat::generate_system(opt.spec);
    write_output(opt.out_path, covmat::serialize(s));
    return 0;
}

struct BenchOptions {
    covmat::GenSpec spec;
    std::size_t repetitions = 10;
    std::string csv_path;
    bool as_json = false;
    unsigned threads = 1;
};

int run_bench(const BenchOptions& opt) {
    const std::vector<covmat::BenchRecord> records =
        covmat::run_benchmark(opt.spec, opt.repetitions);
    if (!opt.csv_path.empty()) {
        covmat::export_csv(records, opt.csv_path);
    }
    if (opt.as_json) {
        json out = json::array();
        for (const covmat::BenchRecord& r : records) {
            out.push_back({{"algorithm", r.algorithm},
                           {"n", r.objects},
                           {"m", r.coverings},
                           {"repetitions", r.repetitions},
                           {"times", r.times},
                           {"mean", r.mean},
                           {"variance", r.variance},
                           {"threads", opt.threads}});
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const covmat::BenchRecord& r : records) {
            std::cout << r.algorithm << " n=" << r.objects << " m=" << r.coverings
                      << " reps=" << r.repetitions << " mean=" << r.mean
                      << " variance=" << r.variance;
            if (opt.threads > 1) {
                std::cout << " threads=" << opt.threads;
            }
            std::cout << "\n";
        }
    }
    return 0;
}

struct ConvertOptions {
    std::string system_path;
    std::string what = "matrix";
    std::string covering_name;
    std::string out_path;
};

int run_convert(const ConvertOptions& opt) {
    const covmat::SystemDocument doc = load_system(opt.system_path);
    const covmat::CoveringSystem& s = doc.system;
    covmat::BoolMatrix m;
    if (!opt.covering_name.empty()) {
        const covmat::Covering* c = s.find(opt.covering_name);
        if (c == nullptr) {
            throw std::runtime_error("no covering named \"" + opt.covering_name + "\"");
        }
        if (opt.what == "matrix") {
            m = covmat::covering_matrix(*c, s.universe.size());
        } else if (opt.what == "gamma") {
            m = covmat::gamma_of(*c, s.universe.size()).m;
        } else {
            m = covmat::pi_of(*c, s.universe.size()).m;
        }
    } else {
        if (opt.what == "matrix") {
            m = covmat::system_matrix(s);
        } else if (opt.what == "gamma") {
            m = covmat::gamma(s).m;
        } else {
            m = covmat::pi(s).m;
        }
    }
    write_output(opt.out_path, covmat::dump_text(m));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covering-based rough set toolkit: characteristic matrices, "
                 "approximations, incremental updates, reducts, benchmarks"};
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "worker threads for the matrix kernels")
        ->check(CLI::Range(1U, 256U));

    ApproxOptions approx;
    auto* approx_cmd =
        app.add_subcommand("approx", "lower/upper approximations of a labelled set");
    approx_cmd->add_option("--system", approx.system_path, "system JSON document")
        ->required();
    approx_cmd->add_option("--set", approx.set_csv, "comma-separated object labels")
        ->required();
    approx_cmd->add_option("--op", approx.op, "second or sixth approximations")
        ->check(CLI::IsMember({"second", "sixth"}));
    approx_cmd->add_option("--dump-gamma", approx.dump_gamma,
                           "write the type-1 characteristic matrix dump to a file");
    approx_cmd->add_option("--dump-pi", approx.dump_pi,
                           "write the type-2 characteristic matrix dump to a file");
    approx_cmd->add_option("--dump-matrix", approx.dump_matrix,
                           "write the system membership matrix dump to a file");
    approx_cmd->add_flag("--json", approx.as_json, "JSON output");

    std::string validate_path;
    bool validate_json = false;
    auto* validate_cmd = app.add_subcommand("validate", "check a system document");
    validate_cmd->add_option("--system", validate_path, "system JSON document")->required();
    validate_cmd->add_flag("--json", validate_json, "JSON output");

    UpdateOptions update;
    auto* update_cmd = app.add_subcommand(
        "update", "apply covering additions/removals, then approximate");
    update_cmd->add_option("--system", update.system_path, "system JSON document")
        ->required();
    update_cmd->add_option("--add", update.add_paths,
                           "covering JSON document to add (repeatable)");
    update_cmd->add_option("--remove", update.remove_names,
                           "covering name to remove (repeatable)");
    update_cmd->add_option("--set", update.set_csv, "comma-separated object labels")
        ->required();
    update_cmd->add_option("--op", update.op, "second or sixth approximations")
        ->check(CLI::IsMember({"second", "sixth"}));

    ReductOptions reduct;
    auto* reduct_cmd =
        app.add_subcommand("reduct", "enumerate reducts of a decision system");
    reduct_cmd->add_option("--system", reduct.system_path, "decision system JSON document")
        ->required();
    reduct_cmd->add_option("--kind", reduct.kind, "type1 or type2")
        ->check(CLI::IsMember({"type1", "type2"}));
    reduct_cmd->add_option("--add", reduct.add_path,
                           "covering JSON document to add before rechecking");
    reduct_cmd->add_option("--bound", reduct.bound,
                           "largest conditional family the enumeration accepts");
    reduct_cmd->add_flag("--json", reduct.as_json, "JSON output");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a random covering system");
    gen_cmd->add_option("--n", gen.spec.objects, "object count");
    gen_cmd->add_option("--m", gen.spec.coverings, "covering count");
    gen_cmd->add_option("--blocks", gen.spec.blocks_per_covering, "blocks per covering");
    gen_cmd->add_option("--prob", gen.spec.extra_membership_prob,
                        "extra membership probability");
    auto* gen_seed = gen_cmd->add_option("--seed", gen.spec.seed, "generator seed");
    gen_cmd->add_option("--out", gen.out_path, "output path (stdout when absent)");

    BenchOptions bench;
    auto* bench_cmd =
        app.add_subcommand("bench", "time the four pipelines on a generated system");
    bench_cmd->add_option("--n", bench.spec.objects, "object count");
    bench_cmd->add_option("--m", bench.spec.coverings, "covering count");
    bench_cmd->add_option("--blocks", bench.spec.blocks_per_covering, "blocks per covering");
    bench_cmd->add_option("--prob", bench.spec.extra_membership_prob,
                          "extra membership probability");
    auto* bench_seed = bench_cmd->add_option("--seed", bench.spec.seed, "generator seed");
    bench_cmd->add_option("--reps", bench.repetitions, "timed repetitions per algorithm");
    bench_cmd->add_option("--csv", bench.csv_path, "write per-repetition times as CSV");
    bench_cmd->add_flag("--json", bench.as_json, "JSON output");

    ConvertOptions convert;
    auto* convert_cmd =
        app.add_subcommand("convert", "export a system as a 0/1 matrix text dump");
    convert_cmd->add_option("--system", convert.system_path, "system JSON document")
        ->required();
    convert_cmd->add_option("--what", convert.what, "matrix (membership), gamma or pi")
        ->check(CLI::IsMember({"matrix", "gamma", "pi"}));
    convert_cmd->add_option("--covering", convert.covering_name,
                            "restrict to one covering by name");
    convert_cmd->add_option("--out", convert.out_path, "output path (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (test_mode()) {
        // Deterministic mode: randomized subcommands need an explicit seed.
        if (gen_cmd->parsed() && gen_seed->count() == 0) {
            std::cerr << "gen: COVMAT_TEST=1 requires an explicit --seed\n";
            return 2;
        }
        if (bench_cmd->parsed() && bench_seed->count() == 0) {
            std::cerr << "bench: COVMAT_TEST=1 requires an explicit --seed\n";
            return 2;
        }
    }

    covmat::set_kernel_threads(threads);
    bench.threads = threads;

    try {
        if (approx_cmd->parsed()) {
            return run_approx(approx);
        }
        if (validate_cmd->parsed()) {
            const covmat::SystemDocument doc =
                covmat::parse_system(read_file(validate_path));
            const auto violations = doc.has_decision()
                                        ? covmat::validate(doc.decision_system())
                                        : covmat::validate(doc.system);
            if (validate_json) {
                json out;
                out["ok"] = violations.empty();
                json list = json::array();
                for (const auto& v : violations) {
                    list.push_back(covmat::to_string(v));
                }
                out["violations"] = std::move(list);
                std::cout << out.dump(2) << "\n";
            } else if (violations.empty()) {
                std::cout << "ok\n";
            } else {
                for (const auto& v : violations) {
                    std::cout << covmat::to_string(v) << "\n";
                }
            }
            return violations.empty() ? 0 : 1;
        }
        if (update_cmd->parsed()) {
            return run_update(update);
        }
        if (reduct_cmd->parsed()) {
            return run_reduct(reduct);
        }
        if (gen_cmd->parsed()) {
            return run_gen(gen);
        }
        if (bench_cmd->parsed()) {
            return run_bench(bench);
        }
        if (convert_cmd->parsed()) {
            return run_convert(convert);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
