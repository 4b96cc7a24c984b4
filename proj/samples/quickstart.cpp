// Minimal library walkthrough: build the overlapping-boxes example, infer a
// classifier, and inspect the robustness margins it attains.

#include <iostream>

#include "uastl/uastl.hpp"

int main() {
    using namespace uastl;

    // Two 1-D interval trajectories of length one: [4,9] shows the desired
    // behavior, [1,6] the undesired one. They overlap, so no formula can
    // classify them perfectly; the best worst-case margin is -1.
    LabeledDataset data;
    data.push_back(IntervalTrajectory({{Interval(4, 9)}}), Label::Desired);
    data.push_back(IntervalTrajectory({{Interval(1, 6)}}), Label::Undesired);

    PredicateGrammar grammar({PredicateTemplate{{1.0}, Sense::Gt}});
    InferenceParams params;
    params.max_size = 1;
    ir::SolverBackend backend{ir::InternalSolver{}};

    InferenceResult result = tli_ua(data, grammar, params, backend);
    std::cout << "inferred: " << print_formula(*result.formula) << "\n";
    std::cout << "objective: " << result.attained << "\n";

    for (const auto& [trajectory, label] : data.entries()) {
        std::cout << "  label " << label_sign(label) << ": worst "
                  << interval_robustness(trajectory, *result.formula, 0,
                                         RobustnessView::WorstCase)
                  << ", best "
                  << interval_robustness(trajectory, *result.formula, 0,
                                         RobustnessView::BestCase)
                  << "\n";
    }
    return 0;
}
