#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "uastl/parse.hpp"
#include "uastl/semantics.hpp"

using namespace uastl;

namespace {

Trajectory traj1(std::initializer_list<double> xs) {
    std::vector<std::vector<double>> v;
    for (double x : xs) v.push_back({x});
    return Trajectory(v);
}

IntervalTrajectory boxes1(std::initializer_list<std::pair<double, double>> ivs) {
    std::vector<std::vector<Interval>> b;
    for (auto [lo, hi] : ivs) b.push_back({Interval(lo, hi)});
    return IntervalTrajectory(b);
}

StlFormula x1_gt(double c) { return f_pred(Predicate({1.0}, Sense::Gt, c)); }
StlFormula x1_lt(double c) { return f_pred(Predicate({1.0}, Sense::Lt, c)); }

// Random formula generator with one polarity per dimension: predicates on a
// dimension all share the sense, and negation / implication are excluded.
StlFormula random_monotone_formula(std::mt19937_64& rng, int size_budget, std::size_t dims,
                                   int horizon, const std::vector<Sense>& sense_of_dim) {
    std::uniform_real_distribution<double> threshold(-6.0, 6.0);
    std::uniform_int_distribution<std::size_t> dim(0, dims - 1);
    auto window = [&] {
        std::uniform_int_distribution<int> a(0, std::max(0, horizon - 2));
        int lo = a(rng);
        std::uniform_int_distribution<int> b(lo + 1, horizon - 1 > lo ? horizon - 1 : lo + 1);
        return TimeWindow(lo, b(rng));
    };
    auto pred = [&] {
        std::size_t k = dim(rng);
        std::vector<double> w(dims, 0.0);
        w[k] = 1.0;
        return f_pred(Predicate(w, sense_of_dim[k], threshold(rng)));
    };
    if (size_budget <= 1) return pred();
    switch (rng() % 6) {
        case 0: return pred();
        case 1:
            return f_and(
                random_monotone_formula(rng, size_budget - 2, dims, horizon, sense_of_dim),
                random_monotone_formula(rng, size_budget - 2, dims, horizon, sense_of_dim));
        case 2:
            return f_or(
                random_monotone_formula(rng, size_budget - 2, dims, horizon, sense_of_dim),
                random_monotone_formula(rng, size_budget - 2, dims, horizon, sense_of_dim));
        case 3:
            return f_eventually(window(), random_monotone_formula(rng, size_budget - 1, dims,
                                                                  horizon, sense_of_dim));
        case 4:
            return f_always(window(), random_monotone_formula(rng, size_budget - 1, dims,
                                                              horizon, sense_of_dim));
        default:
            return f_until(
                window(),
                random_monotone_formula(rng, size_budget - 2, dims, horizon, sense_of_dim),
                random_monotone_formula(rng, size_budget - 2, dims, horizon, sense_of_dim));
    }
}

StlFormula random_general_formula(std::mt19937_64& rng, int depth, std::size_t dims,
                                  int horizon) {
    std::uniform_real_distribution<double> threshold(-6.0, 6.0);
    std::uniform_int_distribution<std::size_t> dim(0, dims - 1);
    auto window = [&] {
        std::uniform_int_distribution<int> a(0, horizon - 1);
        int lo = a(rng);
        std::uniform_int_distribution<int> b(lo + 1, horizon);
        return TimeWindow(lo, b(rng));
    };
    auto pred = [&] {
        std::size_t k = dim(rng);
        std::vector<double> w(dims, 0.0);
        w[k] = 1.0;
        return f_pred(Predicate(w, rng() % 2 ? Sense::Gt : Sense::Lt, threshold(rng)));
    };
    if (depth <= 0) return rng() % 10 == 0 ? f_true() : pred();
    switch (rng() % 9) {
        case 0: return pred();
        case 1: return f_true();
        case 2: return f_not(random_general_formula(rng, depth - 1, dims, horizon));
        case 3:
            return f_and(random_general_formula(rng, depth - 1, dims, horizon),
                         random_general_formula(rng, depth - 1, dims, horizon));
        case 4:
            return f_or(random_general_formula(rng, depth - 1, dims, horizon),
                        random_general_formula(rng, depth - 1, dims, horizon));
        case 5:
            return f_implies(random_general_formula(rng, depth - 1, dims, horizon),
                             random_general_formula(rng, depth - 1, dims, horizon));
        case 6:
            return f_eventually(window(), random_general_formula(rng, depth - 1, dims, horizon));
        case 7: return f_always(window(), random_general_formula(rng, depth - 1, dims, horizon));
        default:
            return f_until(window(), random_general_formula(rng, depth - 1, dims, horizon),
                           random_general_formula(rng, depth - 1, dims, horizon));
    }
}

Trajectory random_trajectory(std::mt19937_64& rng, std::size_t dims, std::size_t length) {
    std::uniform_real_distribution<double> v(-6.0, 6.0);
    std::vector<std::vector<double>> values(length, std::vector<double>(dims));
    for (auto& row : values)
        for (double& x : row) x = v(rng);
    return Trajectory(values);
}

IntervalTrajectory random_boxes(std::mt19937_64& rng, std::size_t dims, std::size_t length) {
    std::uniform_real_distribution<double> mid(-5.0, 5.0);
    std::uniform_real_distribution<double> halfw(0.0, 2.0);
    std::vector<std::vector<Interval>> b(length);
    for (auto& row : b)
        for (std::size_t k = 0; k < dims; ++k) {
            // Rational endpoints: snap to a 1/8 grid.
            double m = std::round(mid(rng) * 8.0) / 8.0;
            double h = std::round(halfw(rng) * 8.0) / 8.0;
            row.emplace_back(m - h, m + h);
        }
    return IntervalTrajectory(b);
}

}  // namespace

TEST_CASE("strong semantics base cases") {
    Trajectory z = traj1({2.0});
    REQUIRE(eval_strong(z, x1_gt(0.0), 0));
    // Beyond the horizon a predicate is strongly false, weakly true.
    REQUIRE(!eval_strong(z, x1_gt(0.0), 1));
    REQUIRE(eval_weak(z, x1_gt(0.0), 1));
    REQUIRE(eval_weak(z, x1_gt(0.0), 0));
}

TEST_CASE("until unrolls per the strong semantics") {
    // zeta = [0, 5]: (x1<1) U[0,2) (x1>4) holds at j=0 via j'=1.
    Trajectory z = traj1({0.0, 5.0});
    StlFormula u = f_until(TimeWindow(0, 2), x1_lt(1.0), x1_gt(4.0));
    REQUIRE(eval_strong(z, u, 0));
    // With the witness removed it fails.
    REQUIRE(!eval_strong(traj1({0.0, 3.0}), u, 0));
    // Prefix violation kills the witness at j'=1.
    REQUIRE(!eval_strong(traj1({2.0, 5.0}), u, 0));
    // Immediate witness needs no prefix.
    REQUIRE(eval_strong(traj1({5.0, 0.0}), u, 0));
}

TEST_CASE("strong implies weak everywhere") {
    std::mt19937_64 rng(11);
    for (int s = 0; s < 4000; ++s) {
        std::size_t dims = 1 + rng() % 2;
        std::size_t length = 1 + rng() % 5;
        Trajectory z = random_trajectory(rng, dims, length);
        StlFormula f = random_general_formula(rng, 3, dims, static_cast<int>(length) + 1);
        std::size_t j = rng() % (length + 2);
        if (eval_strong(z, f, j)) REQUIRE(eval_weak(z, f, j));
    }
}

TEST_CASE("robustness of basic shapes") {
    REQUIRE(robustness(traj1({2.0}), x1_gt(0.0), 0) == 2.0);
    REQUIRE(robustness(traj1({2.0}), f_not(x1_gt(0.0)), 0) == -2.0);
    // F[0,3)(x1>3) on [1,4,0]: max over {1-3, 4-3, 0-3} = 1.
    REQUIRE(robustness(traj1({1.0, 4.0, 0.0}), f_eventually(TimeWindow(0, 3), x1_gt(3.0)), 0) ==
            1.0);
    REQUIRE(robustness(traj1({2.0}), f_true(), 0) == kPlusInf);
    REQUIRE(robustness(traj1({2.0}), f_not(f_true()), 0) == kMinusInf);
    // Implication is max(-r(a), r(b)).
    REQUIRE(robustness(traj1({2.0}), f_implies(x1_gt(0.0), x1_gt(5.0)), 0) == -2.0);
    REQUIRE_THROWS_AS(robustness(traj1({2.0}), x1_gt(0.0), 3), std::out_of_range);
}

TEST_CASE("window clipping conventions") {
    Trajectory z = traj1({1.0, 2.0});
    // Window [1,3) at j=1 clips to {}; F yields -inf, G yields +inf.
    REQUIRE(robustness(z, f_eventually(TimeWindow(1, 3), x1_gt(0.0)), 1) == kMinusInf);
    REQUIRE(robustness(z, f_always(TimeWindow(1, 3), x1_gt(0.0)), 1) == kPlusInf);
    REQUIRE(robustness(z, f_until(TimeWindow(1, 3), x1_gt(0.0), x1_gt(0.0)), 1) == kMinusInf);
}

TEST_CASE("sign consistency: positive robustness implies strong satisfaction") {
    std::mt19937_64 rng(12);
    int tested = 0;
    while (tested < 2000) {
        std::size_t dims = 1 + rng() % 2;
        std::size_t length = 2 + rng() % 4;
        Trajectory z = random_trajectory(rng, dims, length);
        StlFormula f = random_general_formula(rng, 3, dims, static_cast<int>(length));
        if (!windows_within_horizon(f, length, 0)) continue;
        ++tested;
        double r = robustness(z, f, 0);
        if (r > 0.0) REQUIRE(eval_strong(z, f, 0));
        if (r < 0.0) REQUIRE(!eval_strong(z, f, 0));
    }
}

TEST_CASE("interval robustness matches the worked 1-D examples") {
    // Box [4,9], x1>5: worst-case -1 (at x=4), best-case 4 (at x=9).
    IntervalTrajectory it = boxes1({{4.0, 9.0}});
    REQUIRE(interval_robustness(it, x1_gt(5.0), 0, RobustnessView::WorstCase) == -1.0);
    REQUIRE(interval_robustness(it, x1_gt(5.0), 0, RobustnessView::BestCase) == 4.0);
    // Box [1,6], !(x1>5): worst-case is -max(x-5) = -1.
    IntervalTrajectory it2 = boxes1({{1.0, 6.0}});
    REQUIRE(interval_robustness(it2, f_not(x1_gt(5.0)), 0, RobustnessView::WorstCase) == -1.0);
}

TEST_CASE("degenerate boxes collapse to point robustness") {
    std::mt19937_64 rng(13);
    for (int s = 0; s < 100; ++s) {
        std::size_t dims = 1 + rng() % 2;
        std::size_t length = 1 + rng() % 5;
        Trajectory z = random_trajectory(rng, dims, length);
        IntervalTrajectory it = IntervalTrajectory::point(z);
        StlFormula f = random_general_formula(rng, 3, dims, static_cast<int>(length));
        double r = robustness(z, f, 0);
        REQUIRE(interval_robustness(it, f, 0, RobustnessView::WorstCase) == r);
        REQUIRE(interval_robustness(it, f, 0, RobustnessView::BestCase) == r);
    }
}

TEST_CASE("negation duality between the views") {
    std::mt19937_64 rng(14);
    for (int s = 0; s < 1000; ++s) {
        std::size_t dims = 1 + rng() % 2;
        std::size_t length = 1 + rng() % 5;
        IntervalTrajectory it = random_boxes(rng, dims, length);
        StlFormula f = random_general_formula(rng, 3, dims, static_cast<int>(length));
        double worst_neg = interval_robustness(it, f_not(f), 0, RobustnessView::WorstCase);
        double best = interval_robustness(it, f, 0, RobustnessView::BestCase);
        REQUIRE(worst_neg == -best);
    }
}

TEST_CASE("corner oracle equals the recursion on single-polarity formulas") {
    std::mt19937_64 rng(15);
    for (int s = 0; s < 500; ++s) {
        std::size_t dims = 1 + rng() % 2;
        std::size_t length = 1 + rng() % 5;
        IntervalTrajectory it = random_boxes(rng, dims, length);
        std::vector<Sense> senses;
        for (std::size_t k = 0; k < dims; ++k)
            senses.push_back(rng() % 2 ? Sense::Gt : Sense::Lt);
        StlFormula f = random_monotone_formula(rng, 4, dims, static_cast<int>(length), senses);
        REQUIRE(!has_mixed_polarity(f));
        for (RobustnessView view : {RobustnessView::WorstCase, RobustnessView::BestCase}) {
            double rec = interval_robustness(it, f, 0, view);
            double oracle = oracle_interval_robustness(it, f, 0, view);
            REQUIRE_THAT(rec, Catch::Matchers::WithinAbs(oracle, 1e-9));
        }
    }
}

TEST_CASE("soundness: the views bracket every sampled member") {
    std::mt19937_64 rng(16);
    for (int s = 0; s < 300; ++s) {
        std::size_t dims = 1 + rng() % 2;
        std::size_t length = 1 + rng() % 4;
        IntervalTrajectory it = random_boxes(rng, dims, length);
        StlFormula f = random_general_formula(rng, 3, dims, static_cast<int>(length));
        double lo = interval_robustness(it, f, 0, RobustnessView::WorstCase);
        double hi = interval_robustness(it, f, 0, RobustnessView::BestCase);
        for (int m = 0; m < 5; ++m) {
            std::vector<std::vector<double>> v(length, std::vector<double>(dims));
            for (std::size_t j = 0; j < length; ++j)
                for (std::size_t k = 0; k < dims; ++k) {
                    std::uniform_real_distribution<double> d(it.at(j)[k].lo, it.at(j)[k].hi);
                    v[j][k] = it.at(j)[k].degenerate() ? it.at(j)[k].lo : d(rng);
                }
            double r = robustness(Trajectory(v), f, 0);
            REQUIRE(lo <= r);
            REQUIRE(r <= hi);
        }
    }
}

TEST_CASE("oracle refuses oversized instances") {
    std::vector<std::vector<Interval>> big(30, std::vector<Interval>(2, Interval(0.0, 1.0)));
    OracleOptions opts;
    opts.max_corners = 1 << 10;
    REQUIRE_THROWS_AS(oracle_interval_robustness(IntervalTrajectory(big), x1_gt(0.0), 0,
                                                 RobustnessView::WorstCase, opts),
                      std::length_error);
}

TEST_CASE("polarity diagnostics") {
    REQUIRE(!has_mixed_polarity(parse_formula("x1 > 1 & x1 > 2")));
    REQUIRE(has_mixed_polarity(parse_formula("x1 > 1 & !(x1 > 2)")));
    REQUIRE(has_mixed_polarity(parse_formula("x1 > 1 & x1 < 2")));
    // Sense and negation cancel: !(x1<c) is positive in x1 again.
    REQUIRE(!has_mixed_polarity(parse_formula("x1 > 1 | !(x1 < 2)")));
    REQUIRE(has_mixed_polarity(parse_formula("x1 > 1 -> x1 > 2")));
}

TEST_CASE("dimension mismatch raises") {
    Trajectory z = traj1({1.0});
    StlFormula f = f_pred(Predicate({0.0, 1.0}, Sense::Gt, 0.0));  // references x2
    REQUIRE_THROWS_AS(eval_strong(z, f, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(robustness(z, f, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(
        interval_robustness(boxes1({{0.0, 1.0}}), f, 0, RobustnessView::WorstCase),
        std::invalid_argument);
}
