#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "uastl/gen.hpp"
#include "uastl/objective.hpp"
#include "uastl/parse.hpp"

using namespace uastl;

namespace {

IntervalTrajectory boxes1(std::initializer_list<std::pair<double, double>> ivs) {
    std::vector<std::vector<Interval>> b;
    for (auto [lo, hi] : ivs) b.push_back({Interval(lo, hi)});
    return IntervalTrajectory(b);
}

StlFormula x1_gt(double c) { return f_pred(Predicate({1.0}, Sense::Gt, c)); }

// The non-separable running example: [4,9] labeled +1 against [1,6]
// labeled -1, with predicates of the form x1 > c.
LabeledDataset overlap_example() {
    LabeledDataset d;
    d.push_back(boxes1({{4.0, 9.0}}), Label::Desired);
    d.push_back(boxes1({{1.0, 6.0}}), Label::Undesired);
    return d;
}

}  // namespace

TEST_CASE("per-entry margins of the overlap example") {
    REQUIRE(objective_single(boxes1({{4.0, 9.0}}), Label::Desired, x1_gt(5.0)) == -1.0);
    REQUIRE(objective_single(boxes1({{1.0, 6.0}}), Label::Undesired, x1_gt(5.0)) == -1.0);
    // An undesired entry against T: -best_case(T) = -inf.
    REQUIRE(objective_single(boxes1({{1.0, 6.0}}), Label::Undesired, f_true()) == kMinusInf);
}

TEST_CASE("dataset objective is the min over entries") {
    LabeledDataset d = overlap_example();
    REQUIRE(objective_dataset(d, x1_gt(5.0)) == -1.0);
    // At c = 4: min(4-4, -(6-4)) = -2.
    REQUIRE(objective_dataset(d, x1_gt(4.0)) == -2.0);

    LabeledDataset single;
    single.push_back(boxes1({{4.0, 9.0}}), Label::Desired);
    REQUIRE(objective_dataset(single, x1_gt(0.0)) == 4.0);

    REQUIRE_THROWS_AS(objective_dataset(LabeledDataset{}, x1_gt(0.0)), std::invalid_argument);
}

TEST_CASE("objective bounds every entry and label flips negate") {
    std::mt19937_64 rng(21);
    for (int s = 0; s < 60; ++s) {
        GenConfig cfg;
        cfg.kind = s % 2 ? DatasetKind::Separable : DatasetKind::NonSeparable;
        cfg.dims = 1 + s % 2;
        cfg.per_class = 1 + s % 3;
        cfg.length = 2 + s % 5;
        cfg.seed = rng();
        LabeledDataset d = gen_dataset(cfg);
        StlFormula f = f_eventually(TimeWindow(0, static_cast<int>(d.length())), x1_gt(3.0));
        double total = objective_dataset(d, f);
        for (const auto& [it, l] : d.entries()) {
            REQUIRE(total <= objective_single(it, l, f));
            // Label flip + negation identity.
            Label flipped = l == Label::Desired ? Label::Undesired : Label::Desired;
            REQUIRE(objective_single(it, flipped, f) == objective_single(it, l, f_not(f)));
        }
    }
}

TEST_CASE("positive dataset objective certifies sampled members") {
    // Separated pair: [4,9] (+1) vs [1,3] (-1); x1 > 3.5 has F = 0.5.
    LabeledDataset d;
    d.push_back(boxes1({{4.0, 9.0}}), Label::Desired);
    d.push_back(boxes1({{1.0, 3.0}}), Label::Undesired);
    StlFormula f = x1_gt(3.5);
    REQUIRE(objective_dataset(d, f) == 0.5);
    std::mt19937_64 rng(22);
    for (const auto& [it, l] : d.entries()) {
        for (int m = 0; m < 50; ++m) {
            std::vector<std::vector<double>> v(1, std::vector<double>(1));
            std::uniform_real_distribution<double> dist(it.at(0)[0].lo, it.at(0)[0].hi);
            v[0][0] = dist(rng);
            Trajectory z(v);
            StlFormula target = l == Label::Desired ? f : f_not(f);
            REQUIRE(robustness(z, target, 0) > 0.0);
            REQUIRE(eval_strong(z, target, 0));
        }
    }
}

TEST_CASE("interval split by averaged margin") {
    LabeledDataset d = overlap_example();
    auto [acc, rej] = split_interval(d, x1_gt(5.0));
    // Entry 1: mean(-1, 4) = 1.5 > 0; entry 2: mean(-4, 1) = -1.5.
    REQUIRE(acc.size() == 1);
    REQUIRE(rej.size() == 1);
    REQUIRE(acc[0].first == d[0].first);
    REQUIRE(rej[0].first == d[1].first);

    SECTION("strict inequality sends ties to the rejected side") {
        LabeledDataset tie;
        tie.push_back(boxes1({{-2.0, 2.0}}), Label::Desired);  // mean = 0 at c=0
        auto [a2, r2] = split_interval(tie, x1_gt(0.0));
        REQUIRE(a2.empty());
        REQUIRE(r2.size() == 1);
    }
}

TEST_CASE("splits partition their input") {
    std::mt19937_64 rng(23);
    for (int s = 0; s < 40; ++s) {
        GenConfig cfg;
        cfg.kind = DatasetKind::NonSeparable;
        cfg.dims = 1 + s % 2;
        cfg.per_class = 1 + s % 3;
        cfg.length = 3;
        cfg.seed = rng();
        LabeledDataset d = gen_dataset(cfg);
        StlFormula f = x1_gt(2.0 + (s % 5));
        auto [acc, rej] = split_interval(d, f);
        REQUIRE(acc.size() + rej.size() == d.size());
        for (const auto& [it, l] : acc.entries()) {
            double mean = 0.5 * (interval_robustness(it, f, 0, RobustnessView::WorstCase) +
                                 interval_robustness(it, f, 0, RobustnessView::BestCase));
            REQUIRE(mean > 0.0);
        }
        for (const auto& [it, l] : rej.entries()) {
            double mean = 0.5 * (interval_robustness(it, f, 0, RobustnessView::WorstCase) +
                                 interval_robustness(it, f, 0, RobustnessView::BestCase));
            REQUIRE(mean <= 0.0);
        }
    }
}

TEST_CASE("point split by strong satisfaction") {
    PointDataset d;
    d.push_back(Trajectory(std::vector<std::vector<double>>{{6.0}}), Label::Desired);
    d.push_back(Trajectory(std::vector<std::vector<double>>{{5.0}}), Label::Desired);  // f(5) = 0: not strict
    d.push_back(Trajectory(std::vector<std::vector<double>>{{1.0}}), Label::Undesired);
    auto [acc, rej] = split_point(d, x1_gt(5.0));
    REQUIRE(acc.size() == 1);
    REQUIRE(rej.size() == 2);
    REQUIRE(acc.size() + rej.size() == d.size());
}
