#pragma once

// Decision trees over STL formulas: inner nodes carry formulas, leaves carry
// a Boolean verdict, the solid edge is taken by split-accepted entries and
// the dashed edge by the rest.

#include <memory>
#include <string>
#include <vector>

#include "uastl/infer/inference.hpp"
#include "uastl/objective.hpp"

namespace uastl {

struct DecisionTree;
using DecisionTreePtr = std::shared_ptr<const DecisionTree>;

struct DecisionTree {
    // Inner node when formula != nullptr, leaf otherwise.
    StlFormula formula;
    DecisionTreePtr solid;   // split-accepted side
    DecisionTreePtr dashed;  // rest
    bool verdict = false;    // leaf label: true for top, false for bottom
    std::size_t pos_count = 0, neg_count = 0;  // dataset summary at a leaf

    bool is_leaf() const { return formula == nullptr; }
};

inline DecisionTreePtr make_leaf(std::size_t pos, std::size_t neg) {
    auto t = std::make_shared<DecisionTree>();
    t->verdict = pos > neg;  // majority; ties go to bottom
    t->pos_count = pos;
    t->neg_count = neg;
    return t;
}

inline DecisionTreePtr make_inner(StlFormula f, DecisionTreePtr solid, DecisionTreePtr dashed) {
    auto t = std::make_shared<DecisionTree>();
    t->formula = std::move(f);
    t->solid = std::move(solid);
    t->dashed = std::move(dashed);
    return t;
}

inline std::size_t tree_depth(const DecisionTreePtr& t) {
    if (!t || t->is_leaf()) return 0;
    return 1 + std::max(tree_depth(t->solid), tree_depth(t->dashed));
}

inline std::size_t tree_leaves(const DecisionTreePtr& t) {
    if (!t) return 0;
    if (t->is_leaf()) return 1;
    return tree_leaves(t->solid) + tree_leaves(t->dashed);
}

/// The formula of a tree: the disjunction over root-to-top-leaf paths of the
/// conjunction of the path's formulas, each negated when the path leaves the
/// node through the dashed edge. A tree with no top leaf yields !T.
inline StlFormula tree_to_formula(const DecisionTreePtr& tree) {
    if (!tree) throw std::invalid_argument("tree_to_formula: null tree");
    std::vector<StlFormula> paths;
    std::vector<StlFormula> prefix;
    auto walk = [&](auto&& self, const DecisionTreePtr& t) -> void {
        if (t->is_leaf()) {
            if (!t->verdict) return;
            StlFormula conj;
            for (const StlFormula& f : prefix) conj = conj ? f_and(conj, f) : f;
            paths.push_back(conj ? conj : f_true());
            return;
        }
        prefix.push_back(t->formula);
        self(self, t->solid);
        prefix.back() = f_not(t->formula);
        self(self, t->dashed);
        prefix.pop_back();
    };
    walk(walk, tree);
    if (paths.empty()) return f_false();
    StlFormula out;
    for (StlFormula& p : paths) out = out ? f_or(out, p) : p;
    return out;
}

/// Route one interval trajectory through the tree with the split rule used
/// during construction (mean of worst- and best-case robustness at t0).
inline bool tree_route(const DecisionTreePtr& tree, const IntervalTrajectory& it) {
    const DecisionTree* t = tree.get();
    while (!t->is_leaf()) {
        const double lo = interval_robustness(it, t->formula, 0, RobustnessView::WorstCase);
        const double hi = interval_robustness(it, t->formula, 0, RobustnessView::BestCase);
        t = (0.5 * (lo + hi) > 0.0 ? t->solid : t->dashed).get();
    }
    return t->verdict;
}

/// Route one point trajectory by strong satisfaction at t0.
inline bool tree_route(const DecisionTreePtr& tree, const Trajectory& tr) {
    const DecisionTree* t = tree.get();
    while (!t->is_leaf()) t = (eval_strong(tr, t->formula, 0) ? t->solid : t->dashed).get();
    return t->verdict;
}

namespace detail {

inline DecisionTreePtr tli_ua_dt_rec(const LabeledDataset& d, const PredicateGrammar& grammar,
                                     const InferenceParams& params,
                                     const ir::SolverBackend& backend, int depth,
                                     const ModelHook& hook) {
    InferenceResult r = tli_ua(d, grammar, params, backend, hook);
    if (!r.formula) return make_leaf(d.count(Label::Desired), d.count(Label::Undesired));
    auto [acc, rej] = split_interval(d, *r.formula);
    const bool depth_capped = params.max_depth > 0 && depth + 1 >= params.max_depth;
    if (acc.empty() || rej.empty() || depth_capped)
        return make_leaf(d.count(Label::Desired), d.count(Label::Undesired));
    return make_inner(*r.formula,
                      tli_ua_dt_rec(acc, grammar, params, backend, depth + 1, hook),
                      tli_ua_dt_rec(rej, grammar, params, backend, depth + 1, hook));
}

inline DecisionTreePtr tli_rs_dt_rec(const PointDataset& d, const PredicateGrammar& grammar,
                                     const InferenceParams& params,
                                     const ir::SolverBackend& backend, int depth,
                                     const ModelHook& hook) {
    auto count = [&](Label l) {
        std::size_t c = 0;
        for (const auto& [t, lab] : d.entries()) c += (lab == l);
        return c;
    };
    InferenceResult r = tli_rs(d, grammar, params, backend, hook);
    if (!r.formula) return make_leaf(count(Label::Desired), count(Label::Undesired));
    auto [acc, rej] = split_point(d, *r.formula);
    const bool depth_capped = params.max_depth > 0 && depth + 1 >= params.max_depth;
    if (acc.empty() || rej.empty() || depth_capped)
        return make_leaf(count(Label::Desired), count(Label::Undesired));
    return make_inner(*r.formula,
                      tli_rs_dt_rec(acc, grammar, params, backend, depth + 1, hook),
                      tli_rs_dt_rec(rej, grammar, params, backend, depth + 1, hook));
}

}  // namespace detail

/// Decision-tree variant of TLI-UA: infer, split by the averaged robustness
/// margin, recurse on both halves, and stop with a majority leaf as soon as
/// a split comes back one-sided. Each split strictly shrinks the dataset, so
/// the recursion terminates.
inline DecisionTreePtr tli_ua_dt(const LabeledDataset& d, const PredicateGrammar& grammar,
                                 const InferenceParams& params,
                                 const ir::SolverBackend& backend, const ModelHook& hook = {}) {
    if (d.empty()) throw std::invalid_argument("tli_ua_dt: empty dataset");
    return detail::tli_ua_dt_rec(d, grammar, params, backend, 0, hook);
}

/// Decision-tree variant of TLI-RS with the strong-satisfaction split.
inline DecisionTreePtr tli_rs_dt(const PointDataset& d, const PredicateGrammar& grammar,
                                 const InferenceParams& params,
                                 const ir::SolverBackend& backend, const ModelHook& hook = {}) {
    if (d.empty()) throw std::invalid_argument("tli_rs_dt: empty dataset");
    return detail::tli_rs_dt_rec(d, grammar, params, backend, 0, hook);
}

/// Render a tree as nested text for reports.
inline std::string tree_to_text(const DecisionTreePtr& t, int indent = 0) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (t->is_leaf()) {
        return pad + (t->verdict ? "T" : "_|_") + "  (+" + std::to_string(t->pos_count) + "/-" +
               std::to_string(t->neg_count) + ")\n";
    }
    std::string out = pad + print_formula(t->formula) + "\n";
    out += pad + "solid:\n" + tree_to_text(t->solid, indent + 1);
    out += pad + "dashed:\n" + tree_to_text(t->dashed, indent + 1);
    return out;
}

}  // namespace uastl
