#pragma once

// Worst-case classification objectives and the dataset splits used by the
// decision-tree variants. Everything is evaluated at t_0.

#include <stdexcept>
#include <utility>

#include "uastl/core.hpp"
#include "uastl/semantics.hpp"

namespace uastl {

/// Worst-case robustness margin of a single labeled interval trajectory:
/// r_worst(zeta, phi, t0) for label +1, r_worst(zeta, !phi, t0) = -r_best
/// for label -1.
inline ExtendedReal objective_single(const IntervalTrajectory& it, Label l,
                                     const StlFormula& f) {
    if (l == Label::Desired)
        return interval_robustness(it, f, 0, RobustnessView::WorstCase);
    return -interval_robustness(it, f, 0, RobustnessView::BestCase);
}

/// The dataset objective F: minimum of the per-entry margins.
inline ExtendedReal objective_dataset(const LabeledDataset& d, const StlFormula& f) {
    if (d.empty()) throw std::invalid_argument("objective_dataset: empty dataset");
    ExtendedReal acc = kPlusInf;
    for (const auto& [it, l] : d.entries())
        acc = std::min(acc, objective_single(it, l, f));
    return acc;
}

/// Split by the averaged robustness margin: an entry goes to the first
/// output iff (r_worst + r_best)/2 > 0 (strict; ties go to the second).
/// The outputs partition the input.
inline std::pair<LabeledDataset, LabeledDataset> split_interval(const LabeledDataset& d,
                                                                const StlFormula& f) {
    if (d.empty()) throw std::invalid_argument("split_interval: empty dataset");
    LabeledDataset accepted, rejected;
    for (const auto& [it, l] : d.entries()) {
        const double lo = interval_robustness(it, f, 0, RobustnessView::WorstCase);
        const double hi = interval_robustness(it, f, 0, RobustnessView::BestCase);
        // Averaging +inf with -inf (a Boolean-constant formula on an entry
        // whose window clips both ways) cannot happen at t0, but guard the
        // NaN case by sending it to the rejected side.
        const double mean = 0.5 * (lo + hi);
        if (mean > 0.0)
            accepted.push_back(it, l);
        else
            rejected.push_back(it, l);
    }
    return {std::move(accepted), std::move(rejected)};
}

/// Split a point dataset by strong satisfaction at t_0.
inline std::pair<PointDataset, PointDataset> split_point(const PointDataset& d,
                                                         const StlFormula& f) {
    if (d.empty()) throw std::invalid_argument("split_point: empty dataset");
    PointDataset accepted, rejected;
    for (const auto& [t, l] : d.entries()) {
        if (eval_strong(t, f, 0))
            accepted.push_back(t, l);
        else
            rejected.push_back(t, l);
    }
    return {std::move(accepted), std::move(rejected)};
}

}  // namespace uastl
