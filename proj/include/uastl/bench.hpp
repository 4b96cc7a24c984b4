#pragma once

// Benchmark harness comparing the four inference algorithms on a dataset
// suite. Wall time is measured around the solve loop only (sampling for the
// baselines and all I/O are excluded). Independent instances may run
// concurrently; each owns its backend session.

#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "uastl/infer/decision_tree.hpp"
#include "uastl/infer/inference.hpp"
#include "uastl/infer/sampling.hpp"

namespace uastl {

enum class Algorithm { TliUa, TliUaDt, TliRs, TliRsDt };

inline const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::TliUa: return "tli-ua";
        case Algorithm::TliUaDt: return "tli-ua-dt";
        case Algorithm::TliRs: return "tli-rs";
        case Algorithm::TliRsDt: return "tli-rs-dt";
    }
    return "?";
}

struct BenchResult {
    std::string dataset_id;
    Algorithm algorithm = Algorithm::TliUa;
    double seconds = 0.0;
    std::string formula;
    double attained = kMinusInf;  // F or s
    std::string stop = "";
    bool failed = false;
    std::string error;
};

struct BenchConfig {
    std::vector<std::pair<std::string, LabeledDataset>> datasets;
    std::vector<Algorithm> algorithms = {Algorithm::TliUa, Algorithm::TliUaDt,
                                         Algorithm::TliRs, Algorithm::TliRsDt};
    InferenceParams params;
    std::function<ir::SolverBackend()> make_backend = [] {
        return ir::SolverBackend{ir::InternalSolver{}};
    };
    std::size_t workers = 1;
};

namespace detail {

inline BenchResult run_one(const BenchConfig& cfg, const std::string& id,
                           const LabeledDataset& d, Algorithm algo) {
    BenchResult r;
    r.dataset_id = id;
    r.algorithm = algo;
    try {
        const PredicateGrammar grammar = PredicateGrammar::standard(d.dims());
        ir::SolverBackend backend = cfg.make_backend();
        // Sampling happens outside the timed section.
        PointDataset sampled;
        if (algo == Algorithm::TliRs || algo == Algorithm::TliRsDt)
            sampled = sample_dataset(d, cfg.params.samples_per_interval, cfg.params.seed);

        const auto start = std::chrono::steady_clock::now();
        switch (algo) {
            case Algorithm::TliUa: {
                InferenceResult res = tli_ua(d, grammar, cfg.params, backend);
                r.formula = res.formula ? print_formula(*res.formula) : "";
                r.attained = res.attained;
                r.stop = stop_reason_name(res.stop);
                break;
            }
            case Algorithm::TliRs: {
                InferenceResult res = tli_rs(sampled, grammar, cfg.params, backend);
                r.formula = res.formula ? print_formula(*res.formula) : "";
                r.attained = res.attained;
                r.stop = stop_reason_name(res.stop);
                break;
            }
            case Algorithm::TliUaDt: {
                DecisionTreePtr tree = tli_ua_dt(d, grammar, cfg.params, backend);
                r.formula = print_formula(tree_to_formula(tree));
                r.attained = objective_dataset(d, tree_to_formula(tree));
                r.stop = "tree";
                break;
            }
            case Algorithm::TliRsDt: {
                DecisionTreePtr tree = tli_rs_dt(sampled, grammar, cfg.params, backend);
                r.formula = print_formula(tree_to_formula(tree));
                r.attained = classification_fraction(sampled, tree_to_formula(tree));
                r.stop = "tree";
                break;
            }
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
    } catch (const std::exception& ex) {
        r.failed = true;
        r.error = ex.what();
    }
    return r;
}

}  // namespace detail

inline std::vector<BenchResult> run_bench(const BenchConfig& cfg) {
    struct Job {
        std::size_t dataset;
        Algorithm algo;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < cfg.datasets.size(); ++i)
        for (Algorithm a : cfg.algorithms) jobs.push_back({i, a});
    std::vector<BenchResult> results(jobs.size());

    const std::size_t workers = std::max<std::size_t>(1, cfg.workers);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= jobs.size()) break;
            const Job& job = jobs[idx];
            results[idx] = detail::run_one(cfg, cfg.datasets[job.dataset].first,
                                           cfg.datasets[job.dataset].second, job.algo);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return results;
}

/// Human-readable summary table.
inline std::string bench_table(const std::vector<BenchResult>& results) {
    std::ostringstream out;
    out << std::left << std::setw(14) << "dataset" << std::setw(11) << "algorithm"
        << std::setw(12) << "seconds" << std::setw(12) << "attained" << std::setw(16) << "stop"
        << "formula\n";
    for (const BenchResult& r : results) {
        out << std::left << std::setw(14) << r.dataset_id << std::setw(11)
            << algorithm_name(r.algorithm);
        if (r.failed) {
            out << "FAILED: " << r.error << "\n";
            continue;
        }
        out << std::setw(12) << std::setprecision(4) << std::fixed << r.seconds;
        out.unsetf(std::ios::fixed);
        out << std::setw(12) << std::setprecision(6) << r.attained << std::setw(16) << r.stop
            << r.formula << "\n";
    }
    return out.str();
}

/// Plot data: one line per run, tab-separated (dataset, algorithm, seconds).
inline void write_plot_data(const std::vector<BenchResult>& results, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const BenchResult& r : results) {
        if (r.failed) continue;
        out << r.dataset_id << "\t" << algorithm_name(r.algorithm) << "\t" << r.seconds << "\n";
    }
}

}  // namespace uastl
