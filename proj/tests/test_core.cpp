#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "uastl/core.hpp"
#include "uastl/formula.hpp"
#include "uastl/parse.hpp"

using namespace uastl;

namespace {

Predicate x1_gt(double c) { return Predicate({1.0}, Sense::Gt, c); }

StlFormula random_formula(std::mt19937_64& rng, int depth, std::size_t dims, int horizon) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
    std::uniform_real_distribution<double> threshold(-10.0, 10.0);
    std::uniform_int_distribution<std::size_t> dim(0, dims - 1);
    auto window = [&] {
        std::uniform_int_distribution<int> a(0, horizon - 1);
        int lo = a(rng);
        std::uniform_int_distribution<int> b(lo + 1, horizon);
        return TimeWindow(lo, b(rng));
    };
    auto pred = [&] {
        std::vector<double> w(dims, 0.0);
        w[dim(rng)] = 1.0;
        return f_pred(Predicate(w, rng() % 2 ? Sense::Gt : Sense::Lt, threshold(rng)));
    };
    switch (pick(rng)) {
        case 0: return pred();
        case 1: return rng() % 8 == 0 ? f_true() : pred();
        case 2: return f_not(random_formula(rng, depth - 1, dims, horizon));
        case 3:
            return f_and(random_formula(rng, depth - 1, dims, horizon),
                         random_formula(rng, depth - 1, dims, horizon));
        case 4:
            return f_or(random_formula(rng, depth - 1, dims, horizon),
                        random_formula(rng, depth - 1, dims, horizon));
        case 5: return f_eventually(window(), random_formula(rng, depth - 1, dims, horizon));
        case 6: return f_always(window(), random_formula(rng, depth - 1, dims, horizon));
        default:
            return f_until(window(), random_formula(rng, depth - 1, dims, horizon),
                           random_formula(rng, depth - 1, dims, horizon));
    }
}

}  // namespace

TEST_CASE("interval invariants") {
    REQUIRE_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
    Interval iv(1.0, 4.0);
    REQUIRE(iv.contains(1.0));
    REQUIRE(iv.contains(4.0));
    REQUIRE(!iv.contains(4.5));
    REQUIRE(Interval(2.0, 2.0).degenerate());
    // Touching intervals intersect (closed intervals).
    REQUIRE(Interval(1.0, 4.0).intersects(Interval(4.0, 6.0)));
    REQUIRE(!Interval(1.0, 3.0).intersects(Interval(4.0, 6.0)));
}

TEST_CASE("trajectory shape validation") {
    REQUIRE_THROWS_AS(Trajectory(std::vector<std::vector<double>>{}), std::invalid_argument);
    REQUIRE_THROWS_AS(Trajectory({{1.0, 2.0}, {3.0}}), std::invalid_argument);
    Trajectory t({{1.0, 2.0}, {3.0, 4.0}});
    REQUIRE(t.length() == 2);
    REQUIRE(t.dims() == 2);
}

TEST_CASE("interval trajectory membership") {
    IntervalTrajectory it({{Interval(0, 2), Interval(-1, 1)}, {Interval(5, 9), Interval(0, 0)}});
    REQUIRE(it.contains(Trajectory({{1.0, 0.0}, {7.0, 0.0}})));
    REQUIRE(!it.contains(Trajectory({{1.0, 0.0}, {4.0, 0.0}})));

    SECTION("random members stay inside") {
        std::mt19937_64 rng(7);
        for (int s = 0; s < 200; ++s) {
            std::vector<std::vector<double>> v(it.length(), std::vector<double>(it.dims()));
            for (std::size_t j = 0; j < it.length(); ++j)
                for (std::size_t k = 0; k < it.dims(); ++k) {
                    std::uniform_real_distribution<double> d(it.at(j)[k].lo, it.at(j)[k].hi);
                    v[j][k] = it.at(j)[k].degenerate() ? it.at(j)[k].lo : d(rng);
                }
            REQUIRE(it.contains(Trajectory(v)));
        }
    }
}

TEST_CASE("dataset shape checks") {
    LabeledDataset d;
    d.push_back(IntervalTrajectory({{Interval(0, 1)}}), Label::Desired);
    REQUIRE_THROWS_AS(
        d.push_back(IntervalTrajectory({{Interval(0, 1)}, {Interval(0, 1)}}), Label::Undesired),
        std::invalid_argument);
    REQUIRE(d.count(Label::Desired) == 1);
    REQUIRE(!d.has_both_labels());
}

TEST_CASE("predicate evaluation and extrema") {
    Predicate p({1.0, -1.0}, Sense::Gt, 2.0);  // x1 - x2 > 2
    REQUIRE(p.eval({5.0, 1.0}) == 2.0);
    std::vector<Interval> box{Interval(1, 4), Interval(0, 2)};
    REQUIRE(p.extremum(box, true) == 4.0 - 0.0 - 2.0);   // best case
    REQUIRE(p.extremum(box, false) == 1.0 - 2.0 - 2.0);  // worst case
    Predicate q({1.0}, Sense::Lt, 5.0);  // x1 < 5
    std::vector<Interval> b2{Interval(1, 6)};
    REQUIRE(q.extremum(b2, true) == 4.0);
    REQUIRE(q.extremum(b2, false) == -1.0);
    REQUIRE_THROWS_AS(Predicate({0.0, 0.0}, Sense::Gt, 1.0), std::invalid_argument);
}

TEST_CASE("formula size counts distinct DAG nodes") {
    // The shared-subformula DAG of (p1 U p2) & G(p1 | p2) with p2 shared:
    // both occurrences of p2 are one node, p1 stays duplicated.
    StlFormula p2 = f_pred(Predicate({1.0}, Sense::Lt, 2.0));
    StlFormula u = f_until(TimeWindow(0, 3), f_pred(x1_gt(1.0)), p2);
    StlFormula g = f_always(TimeWindow(0, 3), f_or(f_pred(x1_gt(1.0)), p2));
    StlFormula root = f_and(u, g);
    REQUIRE(formula_size(root) == 7);

    // Sharing p1 as well drops the size further.
    StlFormula p1 = f_pred(x1_gt(1.0));
    StlFormula root2 = f_and(f_until(TimeWindow(0, 3), p1, p2),
                             f_always(TimeWindow(0, 3), f_or(p1, p2)));
    REQUIRE(formula_size(root2) == 6);

    REQUIRE(formula_size(f_pred(x1_gt(0.0))) == 1);
    REQUIRE(formula_size(f_not(f_pred(x1_gt(0.0)))) == 2);
}

TEST_CASE("printing and parsing round-trips") {
    PredicateGrammar grammar = PredicateGrammar::standard(1);
    StlFormula f = parse_formula("G[1,5)(x1 > 3.8) | F[3,4)(x1 < 0.75)", grammar);
    REQUIRE(formula_size(f) == 5);
    REQUIRE(f->op == Op::Or);
    REQUIRE(f->left->op == Op::Always);
    REQUIRE(f->left->window == TimeWindow(1, 5));
    REQUIRE(f->right->op == Op::Eventually);
    REQUIRE(f->right->left->pred.sense == Sense::Lt);
    REQUIRE(print_formula(f) == "G[1,5)(x1 > 3.8) | F[3,4)(x1 < 0.75)");

    REQUIRE(parse_formula("T")->op == Op::True);
    REQUIRE(formula_size(parse_formula("T")) == 1);

    StlFormula dag = parse_formula("(x1 > 1 U[0,3) x1 < 2) & G[0,3)(x1 > 1 | x1 < 2)");
    REQUIRE(formula_size(dag) == 8);  // parsed as a tree, no implicit sharing
    REQUIRE(formula_equal(parse_formula(print_formula(dag)), dag));
}

TEST_CASE("parse errors carry positions") {
    PredicateGrammar grammar = PredicateGrammar::standard(1);
    REQUIRE_THROWS_AS(parse_formula("", grammar), ParseError);
    REQUIRE_THROWS_AS(parse_formula("x1 >", grammar), ParseError);
    REQUIRE_THROWS_AS(parse_formula("x1 > 1)", grammar), ParseError);
    REQUIRE_THROWS_AS(parse_formula("G[3,3)(x1 > 0)", grammar), ParseError);
    // x1+x2 is outside a 1-D grammar.
    REQUIRE_THROWS_AS(parse_formula("x1 + x2 > 0", grammar), ParseError);
    try {
        parse_formula("x1 > 1 &", grammar);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(e.pos() >= 8);
    }
}

TEST_CASE("parse/print round-trip on random formulas") {
    std::mt19937_64 rng(42);
    for (int s = 0; s < 300; ++s) {
        StlFormula f = random_formula(rng, 3, 2, 6);
        std::string text = print_formula(f);
        StlFormula g = parse_formula(text);
        INFO(text);
        REQUIRE(formula_equal(f, g));
        REQUIRE(print_formula(g) == text);
    }
}

TEST_CASE("implication and until parse with spec precedence") {
    // Precedence: ! > temporal > & > | > ->
    StlFormula f = parse_formula("x1 > 0 U[0,2) x1 < 5 & x1 > 1 | x1 < 2 -> T");
    REQUIRE(f->op == Op::Implies);
    REQUIRE(f->left->op == Op::Or);
    REQUIRE(f->left->left->op == Op::And);
    REQUIRE(f->left->left->left->op == Op::Until);
    StlFormula g = parse_formula("!x1 > 0 U[0,2) x1 < 5");
    REQUIRE(g->op == Op::Until);
    REQUIRE(g->left->op == Op::Not);
}
