#pragma once

// The two size-iterating inference loops: TLI-UA maximizes the worst-case
// robustness margin over interval trajectories; TLI-RS maximizes the number
// of correctly classified sampled trajectories.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "uastl/core.hpp"
#include "uastl/encode/build.hpp"
#include "uastl/objective.hpp"
#include "uastl/solve/backend.hpp"

namespace uastl {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InferenceParams {
    int max_size = 4;                            // N
    double min_robustness = kPlusInf;            // R; +inf solves directly at N
    double min_classification = 1.0;             // S, baselines only
    std::size_t samples_per_interval = 200;
    std::uint64_t seed = 0;
    double timeout_s = 1000.0;                   // per solve
    int max_depth = 0;                           // decision trees; 0 = unlimited
};

enum class StopReason { MarginReached, ClassificationReached, SizeCap, Timeout };

inline const char* stop_reason_name(StopReason s) {
    switch (s) {
        case StopReason::MarginReached: return "margin-reached";
        case StopReason::ClassificationReached: return "classification-reached";
        case StopReason::SizeCap: return "size-cap";
        case StopReason::Timeout: return "timeout";
    }
    return "?";
}

struct InferenceResult {
    std::optional<StlFormula> formula;
    double attained = kMinusInf;  // F for the UA family, s for the RS family
    int size = 0;
    StopReason stop = StopReason::SizeCap;
    bool timed_out = false;
    bool single_label_flagged = false;
};

/// Observation hook for every model a loop decodes; used by verification.
using ModelHook =
    std::function<void(const ir::Encoding&, const ir::SolverModel&, const StlFormula&)>;

/// TLI-UA: grow the formula size, solve the DAG encoding with the Y
/// objective, and stop once the attained margin reaches R (or the size cap).
/// The attained value is re-evaluated through the objective module, not
/// taken from the solver.
inline InferenceResult tli_ua(const LabeledDataset& d, const PredicateGrammar& grammar,
                              const InferenceParams& params, const ir::SolverBackend& backend,
                              const ModelHook& hook = {}) {
    if (d.empty()) throw std::invalid_argument("tli_ua: empty dataset");
    if (params.max_size < 1) throw std::invalid_argument("tli_ua: max_size must be positive");

    InferenceResult res;
    res.single_label_flagged = !d.has_both_labels();

    std::vector<Label> labels;
    for (const auto& [it, l] : d.entries()) labels.push_back(l);
    const std::vector<Interval> domains = ir::threshold_domains(grammar, d);
    const int H = static_cast<int>(d.length());

    // With R = +inf the margin can never stop the loop; solve at N directly.
    const int first_n = params.min_robustness == kPlusInf ? params.max_size : 1;

    for (int n = first_n; n <= params.max_size; ++n) {
        ir::Encoding enc = ir::init_encoding(n, grammar, H, domains);
        ir::build_structural(enc);
        for (const auto& [it, l] : d.entries()) ir::build_semantic_interval(enc, grammar, it);
        ir::build_objective_Y(enc, labels);

        ir::SolverModel model = ir::solve_optimize(backend, enc, params.timeout_s);
        if (model.status == ir::SolveStatus::TimedOut && !model.has_model()) {
            res.timed_out = true;
            res.stop = StopReason::Timeout;
            return res;
        }
        if (!model.has_model())
            throw SolverError("tli_ua: solver failed at size " + std::to_string(n) + ": " +
                              model.message);

        StlFormula phi = ir::decode_model(enc, model, grammar);
        if (hook) hook(enc, model, phi);
        res.formula = phi;
        res.attained = objective_dataset(d, phi);
        res.size = n;
        if (model.status == ir::SolveStatus::TimedOut) {
            res.timed_out = true;
            res.stop = StopReason::Timeout;
            return res;
        }
        if (res.attained >= params.min_robustness) {
            res.stop = StopReason::MarginReached;
            return res;
        }
    }
    res.stop = StopReason::SizeCap;
    return res;
}

/// Fraction of the sample the formula classifies correctly: +1 entries that
/// strongly satisfy it at t0 plus -1 entries that do not.
inline double classification_fraction(const PointDataset& d, const StlFormula& f) {
    if (d.empty()) throw std::invalid_argument("classification_fraction: empty dataset");
    std::size_t correct = 0;
    for (const auto& [t, l] : d.entries()) {
        const bool sat = eval_strong(t, f, 0);
        correct += (sat == (l == Label::Desired));
    }
    return static_cast<double>(correct) / static_cast<double>(d.size());
}

/// TLI-RS: the sampling baseline. Weight-1 soft constraints ask for correct
/// classification of each sampled trajectory; with S = 1 a plain
/// satisfiability query is tried first and the weighted query is the
/// fallback when it is unsatisfiable.
inline InferenceResult tli_rs(const PointDataset& d, const PredicateGrammar& grammar,
                              const InferenceParams& params, const ir::SolverBackend& backend,
                              const ModelHook& hook = {}) {
    if (d.empty()) throw std::invalid_argument("tli_rs: empty dataset");
    if (params.max_size < 1) throw std::invalid_argument("tli_rs: max_size must be positive");
    if (params.min_classification < 0.0 || params.min_classification > 1.0)
        throw std::invalid_argument("tli_rs: S must lie in [0,1]");

    InferenceResult res;
    std::vector<Label> labels;
    for (const auto& [t, l] : d.entries()) labels.push_back(l);
    const std::vector<Interval> domains = ir::threshold_domains(grammar, d);
    const int H = static_cast<int>(d.length());

    for (int n = 1; n <= params.max_size; ++n) {
        ir::Encoding enc = ir::init_encoding(n, grammar, H, domains);
        ir::build_structural(enc);
        for (const auto& [t, l] : d.entries()) ir::build_semantic_point(enc, grammar, t);
        ir::build_consistency(enc, labels);

        const bool want_plain_sat = params.min_classification >= 1.0;
        ir::SolverModel model =
            ir::solve_max_weighted(backend, enc, params.timeout_s, want_plain_sat);
        if (want_plain_sat && model.status == ir::SolveStatus::Unsat)
            model = ir::solve_max_weighted(backend, enc, params.timeout_s, false);

        if (model.status == ir::SolveStatus::TimedOut && !model.has_model()) {
            res.timed_out = true;
            res.stop = StopReason::Timeout;
            return res;
        }
        if (!model.has_model())
            throw SolverError("tli_rs: solver failed at size " + std::to_string(n) + ": " +
                              model.message);

        StlFormula phi = ir::decode_model(enc, model, grammar);
        if (hook) hook(enc, model, phi);
        res.formula = phi;
        res.attained = classification_fraction(d, phi);
        res.size = n;
        if (model.status == ir::SolveStatus::TimedOut) {
            res.timed_out = true;
            res.stop = StopReason::Timeout;
            return res;
        }
        if (res.attained >= params.min_classification) {
            res.stop = StopReason::ClassificationReached;
            return res;
        }
    }
    res.stop = StopReason::SizeCap;
    return res;
}

}  // namespace uastl
