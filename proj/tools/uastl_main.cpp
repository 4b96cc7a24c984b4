// Command-line front end: inference, evaluation, dataset generation, the
// corner-enumeration oracle, and the benchmark harness.
//
// Exit codes: 0 success, 2 parse/validation error, 3 solver failure,
// 4 timeout with a partial result.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uastl/uastl.hpp"

namespace {

using namespace uastl;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitTimeout = 4;

struct CommonOpts {
    int max_size = 4;
    double min_robustness = kPlusInf;
    double min_classification = 1.0;
    std::size_t samples = 200;
    std::uint64_t seed = 0;
    double timeout_s = 1000.0;
    int max_depth = 0;
    std::string solver = "internal";
    std::string solver_cmd;
    std::string grammar_spec;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--max-size", o.max_size, "Size cap N on the formula DAG");
    cmd->add_option("--min-robustness", o.min_robustness,
                    "Stop once the margin reaches this value (default: +inf)");
    cmd->add_option("--min-classification", o.min_classification,
                    "Baselines: stop at this classified fraction (default 1)");
    cmd->add_option("--samples", o.samples, "Baselines: trajectories sampled per interval");
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--timeout", o.timeout_s, "Per-solve timeout in seconds");
    cmd->add_option("--max-depth", o.max_depth,
                    "Decision trees: depth cap (0 = unlimited)");
    cmd->add_option("--solver", o.solver, "Backend: internal or external")
        ->check(CLI::IsMember({"internal", "external"}));
    cmd->add_option("--solver-cmd", o.solver_cmd,
                    "External solver command reading SMT-LIB on stdin (e.g. \"z3 -in\")");
    cmd->add_option("--grammar", o.grammar_spec,
                    "Predicate shapes, e.g. \"x1>c,x1<c,x1+x2>c\" (default: standard)");
}

// Locate the bundled solver next to this executable as the external default.
std::string default_solver_cmd(const char* argv0) {
    std::string self(argv0 ? argv0 : "");
    auto slash = self.find_last_of('/');
    std::string dir = slash == std::string::npos ? "." : self.substr(0, slash);
    return dir + "/uastl-minismt";
}

ir::SolverBackend make_backend(const CommonOpts& o, const char* argv0) {
    if (o.solver == "external") {
        std::string cmd = o.solver_cmd.empty() ? default_solver_cmd(argv0) : o.solver_cmd;
        return ir::SolverBackend{ir::ExternalSolver(cmd)};
    }
    return ir::SolverBackend{ir::InternalSolver{}};
}

PredicateGrammar parse_grammar_spec(const std::string& spec, std::size_t dims) {
    if (spec.empty()) return PredicateGrammar::standard(dims);
    std::vector<PredicateTemplate> atoms;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t end = spec.find_first_of(",;", pos);
        if (end == std::string::npos) end = spec.size();
        std::string tok = spec.substr(pos, end - pos);
        pos = end + 1;
        // Strip spaces.
        std::string s;
        for (char ch : tok)
            if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
        if (s.empty()) continue;
        std::size_t op = s.find_first_of("<>");
        if (op == std::string::npos)
            throw DataError("grammar token '" + tok + "': missing comparison");
        Sense sense = s[op] == '>' ? Sense::Gt : Sense::Lt;
        std::string lhs = s.substr(0, op);
        std::vector<double> coeffs(dims, 0.0);
        double sign = 1.0;
        std::size_t i = 0;
        while (i < lhs.size()) {
            if (lhs[i] == '+') {
                sign = 1.0;
                ++i;
                continue;
            }
            if (lhs[i] == '-') {
                sign = -1.0;
                ++i;
                continue;
            }
            if (lhs[i] != 'x') throw DataError("grammar token '" + tok + "': expected x<k>");
            ++i;
            std::size_t start = i;
            while (i < lhs.size() && std::isdigit(static_cast<unsigned char>(lhs[i]))) ++i;
            int k = std::atoi(lhs.substr(start, i - start).c_str());
            if (k < 1 || static_cast<std::size_t>(k) > dims)
                throw DataError("grammar token '" + tok + "': dimension out of range");
            coeffs[static_cast<std::size_t>(k - 1)] += sign;
            sign = 1.0;
        }
        atoms.push_back({std::move(coeffs), sense});
    }
    if (atoms.empty()) throw DataError("grammar: no atoms");
    return PredicateGrammar(std::move(atoms));
}

InferenceParams to_params(const CommonOpts& o) {
    InferenceParams p;
    p.max_size = o.max_size;
    p.min_robustness = o.min_robustness;
    p.min_classification = o.min_classification;
    p.samples_per_interval = o.samples;
    p.seed = o.seed;
    p.timeout_s = o.timeout_s;
    p.max_depth = o.max_depth;
    return p;
}

int report_inference(const InferenceResult& res, const char* attained_name, double seconds) {
    if (res.formula) std::cout << "formula: " << print_formula(*res.formula) << "\n";
    std::cout << attained_name << ": " << res.attained << "\n";
    std::cout << "size: " << res.size << "\n";
    std::cout << "stop: " << stop_reason_name(res.stop) << "\n";
    if (res.single_label_flagged) std::cout << "note: dataset has a single label\n";
    std::cout << "solve-seconds: " << seconds << "\n";
    if (res.timed_out) return res.formula ? kExitTimeout : kExitSolver;
    return kExitOk;
}

int cmd_infer_ua(const std::string& path, const CommonOpts& o, const char* argv0,
                 bool tree_variant) {
    LabeledDataset d = load_interval_dataset(path);
    PredicateGrammar grammar = parse_grammar_spec(o.grammar_spec, d.dims());
    ir::SolverBackend backend = make_backend(o, argv0);
    InferenceParams params = to_params(o);
    const auto start = std::chrono::steady_clock::now();
    if (tree_variant) {
        DecisionTreePtr tree = tli_ua_dt(d, grammar, params, backend);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        StlFormula f = tree_to_formula(tree);
        std::cout << "tree:\n" << tree_to_text(tree);
        std::cout << "formula: " << print_formula(f) << "\n";
        std::cout << "objective: " << objective_dataset(d, f) << "\n";
        std::cout << "depth: " << tree_depth(tree) << "\n";
        std::cout << "solve-seconds: " << secs << "\n";
        return kExitOk;
    }
    InferenceResult res = tli_ua(d, grammar, params, backend);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report_inference(res, "objective", secs);
}

int cmd_infer_rs(const std::string& path, const CommonOpts& o, const char* argv0,
                 bool tree_variant) {
    PointDataset sampled;
    // The baselines accept either a point dataset or an interval dataset to
    // sample from.
    try {
        sampled = load_point_dataset(path);
    } catch (const DataError&) {
        LabeledDataset d = load_interval_dataset(path);
        sampled = sample_dataset(d, o.samples, o.seed);
    }
    PredicateGrammar grammar = parse_grammar_spec(o.grammar_spec, sampled.dims());
    ir::SolverBackend backend = make_backend(o, argv0);
    InferenceParams params = to_params(o);
    const auto start = std::chrono::steady_clock::now();
    if (tree_variant) {
        DecisionTreePtr tree = tli_rs_dt(sampled, grammar, params, backend);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        StlFormula f = tree_to_formula(tree);
        std::cout << "tree:\n" << tree_to_text(tree);
        std::cout << "formula: " << print_formula(f) << "\n";
        std::cout << "classification: " << classification_fraction(sampled, f) << "\n";
        std::cout << "depth: " << tree_depth(tree) << "\n";
        std::cout << "solve-seconds: " << secs << "\n";
        return kExitOk;
    }
    InferenceResult res = tli_rs(sampled, grammar, params, backend);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report_inference(res, "classification", secs);
}

int cmd_eval(const std::string& dataset_path, const std::string& formula_text) {
    LabeledDataset d = load_interval_dataset(dataset_path);
    PredicateGrammar grammar = PredicateGrammar::standard(d.dims());
    StlFormula f;
    try {
        f = parse_formula(formula_text, grammar);
    } catch (const ParseError&) {
        f = parse_formula(formula_text);  // outside the standard grammar is fine here
    }
    std::cout << "formula: " << print_formula(f) << "\n";
    if (has_mixed_polarity(f))
        std::cout << "note: mixed-polarity formula; the node-wise interval robustness "
                     "may be conservative\n";
    std::cout << "objective: " << objective_dataset(d, f) << "\n";
    for (std::size_t e = 0; e < d.size(); ++e) {
        const auto& [it, l] = d[e];
        std::cout << "entry " << e << ": label " << label_sign(l)
                  << " margin " << objective_single(it, l, f)
                  << " worst " << interval_robustness(it, f, 0, RobustnessView::WorstCase)
                  << " best " << interval_robustness(it, f, 0, RobustnessView::BestCase)
                  << "\n";
    }
    return kExitOk;
}

int cmd_oracle(const std::string& dataset_path, const std::string& formula_text,
               const std::string& view_name, std::size_t max_corners, std::size_t samples,
               std::uint64_t seed) {
    LabeledDataset d = load_interval_dataset(dataset_path);
    StlFormula f = parse_formula(formula_text);
    RobustnessView view =
        view_name == "best" ? RobustnessView::BestCase : RobustnessView::WorstCase;
    OracleOptions opts;
    opts.max_corners = max_corners;
    opts.interior_samples = samples;
    opts.seed = seed;
    for (std::size_t e = 0; e < d.size(); ++e) {
        const auto& it = d[e].first;
        double oracle = oracle_interval_robustness(it, f, 0, view, opts);
        double monitor = interval_robustness(it, f, 0, view);
        std::cout << "entry " << e << ": oracle " << oracle << " monitor " << monitor
                  << " delta " << monitor - oracle << "\n";
    }
    return kExitOk;
}

int cmd_gen(const std::string& out_path, const std::string& kind, std::size_t dims,
            std::size_t per_class, std::size_t length, std::uint64_t seed) {
    GenConfig cfg;
    if (kind == "separable") {
        cfg.kind = DatasetKind::Separable;
    } else if (kind == "non-separable") {
        cfg.kind = DatasetKind::NonSeparable;
    } else {
        throw DataError("gen: kind must be separable or non-separable");
    }
    cfg.dims = dims;
    cfg.per_class = per_class;
    cfg.length = length;
    cfg.seed = seed;
    LabeledDataset d = gen_dataset(cfg);
    save_dataset(d, out_path);
    std::cout << "wrote " << out_path << " (" << d.size() << " entries, dims " << d.dims()
              << ", length " << d.length() << ", "
              << (dataset_separable(d) ? "separable" : "non-separable") << ")\n";
    return kExitOk;
}

int cmd_bench(const std::vector<std::string>& dataset_paths, const CommonOpts& o,
              const char* argv0, std::size_t workers, std::size_t suite_dims,
              std::size_t suite_length, const std::string& plot_path) {
    BenchConfig cfg;
    if (dataset_paths.empty()) {
        // The default suite: five separable and five non-separable datasets.
        for (int i = 0; i < 10; ++i) {
            GenConfig g;
            g.kind = i < 5 ? DatasetKind::Separable : DatasetKind::NonSeparable;
            g.dims = suite_dims;
            g.per_class = 3;
            g.length = suite_length;
            g.seed = o.seed + static_cast<std::uint64_t>(i);
            std::string id = (i < 5 ? "sep-" : "nonsep-") + std::to_string(i % 5);
            cfg.datasets.emplace_back(id, gen_dataset(g));
        }
    } else {
        for (const std::string& path : dataset_paths)
            cfg.datasets.emplace_back(path, load_interval_dataset(path));
    }
    cfg.params = to_params(o);
    cfg.workers = workers;
    CommonOpts backend_opts = o;
    std::string argv0s = argv0 ? argv0 : "";
    cfg.make_backend = [backend_opts, argv0s] {
        return make_backend(backend_opts, argv0s.c_str());
    };
    std::vector<BenchResult> results = run_bench(cfg);
    std::cout << bench_table(results);
    if (!plot_path.empty()) {
        write_plot_data(results, plot_path);
        std::cout << "plot data: " << plot_path << "\n";
    }
    for (const BenchResult& r : results)
        if (r.failed) return kExitSolver;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"STL inference from interval trajectories"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string dataset_path, formula_text, out_path = "dataset.json";
    std::string kind = "separable", view = "worst", plot_path;
    std::size_t dims = 1, per_class = 3, length = 10, workers = 1;
    std::size_t max_corners = std::size_t(1) << 22, oracle_samples = 0;
    std::vector<std::string> bench_paths;

    CLI::App* ua = app.add_subcommand("infer-ua", "Uncertainty-aware inference");
    ua->add_option("dataset", dataset_path)->required();
    add_common(ua, opts);

    CLI::App* uadt = app.add_subcommand("infer-ua-dt", "Decision-tree variant of infer-ua");
    uadt->add_option("dataset", dataset_path)->required();
    add_common(uadt, opts);

    CLI::App* rs = app.add_subcommand("infer-rs", "Sampling baseline");
    rs->add_option("dataset", dataset_path)->required();
    add_common(rs, opts);

    CLI::App* rsdt = app.add_subcommand("infer-rs-dt", "Decision-tree variant of infer-rs");
    rsdt->add_option("dataset", dataset_path)->required();
    add_common(rsdt, opts);

    CLI::App* ev = app.add_subcommand("eval", "Evaluate a formula on a dataset");
    ev->add_option("dataset", dataset_path)->required();
    ev->add_option("formula", formula_text)->required();

    CLI::App* orc = app.add_subcommand("oracle", "Corner-enumeration robustness oracle");
    orc->add_option("dataset", dataset_path)->required();
    orc->add_option("formula", formula_text)->required();
    orc->add_option("--view", view)->check(CLI::IsMember({"worst", "best"}));
    orc->add_option("--max-corners", max_corners);
    orc->add_option("--samples", oracle_samples, "Additional interior samples");
    orc->add_option("--seed", opts.seed);

    CLI::App* gen = app.add_subcommand("gen", "Generate a random dataset");
    gen->add_option("-o,--output", out_path);
    gen->add_option("--kind", kind, "separable | non-separable");
    gen->add_option("--dims", dims)->check(CLI::Range(std::size_t(1), std::size_t(2)));
    gen->add_option("--per-class", per_class)
        ->check(CLI::Range(std::size_t(1), std::size_t(3)));
    gen->add_option("--length", length)->check(CLI::Range(std::size_t(1), std::size_t(10)));
    gen->add_option("--seed", opts.seed);

    CLI::App* bench = app.add_subcommand("bench", "Run the four algorithms on a suite");
    bench->add_option("datasets", bench_paths, "Dataset files (default: generated suite)");
    bench->add_option("--workers", workers);
    bench->add_option("--suite-dims", dims);
    bench->add_option("--suite-length", length);
    bench->add_option("--plot", plot_path, "Write (dataset, algorithm, seconds) TSV");
    add_common(bench, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(ua)) return cmd_infer_ua(dataset_path, opts, argv[0], false);
        if (app.got_subcommand(uadt)) return cmd_infer_ua(dataset_path, opts, argv[0], true);
        if (app.got_subcommand(rs)) return cmd_infer_rs(dataset_path, opts, argv[0], false);
        if (app.got_subcommand(rsdt)) return cmd_infer_rs(dataset_path, opts, argv[0], true);
        if (app.got_subcommand(ev)) return cmd_eval(dataset_path, formula_text);
        if (app.got_subcommand(orc))
            return cmd_oracle(dataset_path, formula_text, view, max_corners, oracle_samples,
                              opts.seed);
        if (app.got_subcommand(gen))
            return cmd_gen(out_path, kind, dims, per_class, length, opts.seed);
        if (app.got_subcommand(bench))
            return cmd_bench(bench_paths, opts, argv[0], workers, dims, length, plot_path);
    } catch (const ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const DataError& ex) {
        std::cerr << "data error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const SolverError& ex) {
        std::cerr << "solver error: " << ex.what() << "\n";
        return kExitSolver;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitSolver;
    }
    return kExitUsage;
}
