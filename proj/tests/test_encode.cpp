#include <catch2/catch_amalgamated.hpp>

#include "uastl/encode/build.hpp"
#include "uastl/encode/smtlib.hpp"
#include "uastl/objective.hpp"
#include "uastl/parse.hpp"
#include "uastl/solve/internal.hpp"

using namespace uastl;
using namespace uastl::ir;

namespace {

IntervalTrajectory boxes1(std::initializer_list<std::pair<double, double>> ivs) {
    std::vector<std::vector<Interval>> b;
    for (auto [lo, hi] : ivs) b.push_back({Interval(lo, hi)});
    return IntervalTrajectory(b);
}

PredicateGrammar gt_only() {
    return PredicateGrammar({PredicateTemplate{{1.0}, Sense::Gt}});
}

// Count the satisfying boolean assignments of the purely structural
// constraint system over the given variables (tiny brute force).
std::size_t count_structural_models(const Encoding& enc,
                                    const std::vector<VarId>& bool_vars,
                                    const std::vector<Term>& constraints,
                                    std::vector<double>& env, std::size_t idx) {
    struct Ctx {
        const Encoding* enc;
        std::vector<double>* env;
        bool eval(const Term& t) const {
            switch (t->kind) {
                case Kind::BoolConst: return t->bval;
                case Kind::Var: return (*env)[static_cast<std::size_t>(t->var)] != 0.0;
                case Kind::Not: return !eval(t->args[0]);
                case Kind::Or:
                    for (const Term& a : t->args)
                        if (eval(a)) return true;
                    return false;
                case Kind::And:
                    for (const Term& a : t->args)
                        if (!eval(a)) return false;
                    return true;
                default: return true;  // non-boolean parts ignored here
            }
        }
    };
    if (idx == bool_vars.size()) {
        Ctx ctx{&enc, &env};
        for (const Term& t : constraints)
            if (!ctx.eval(t)) return 0;
        return 1;
    }
    std::size_t total = 0;
    for (double v : {0.0, 1.0}) {
        env[static_cast<std::size_t>(bool_vars[idx])] = v;
        total += count_structural_models(enc, bool_vars, constraints, env, idx + 1);
    }
    return total;
}

}  // namespace

TEST_CASE("structural constraints force an atomic node 1") {
    PredicateGrammar grammar = gt_only();
    Encoding enc = init_encoding(1, grammar, 1, threshold_domains(grammar, [] {
                                     LabeledDataset d;
                                     d.push_back(boxes1({{0.0, 1.0}}), Label::Desired);
                                     return d;
                                 }()));
    build_structural(enc);
    // With a single node every model labels node 1 with the one atom.
    std::vector<VarId> bools;
    for (std::size_t lam = 0; lam < enc.num_labels(); ++lam)
        bools.push_back(xvar(enc, 1, lam));
    std::vector<double> env(enc.vars.size(), 0.0);
    env[static_cast<std::size_t>(avar(enc, 1))] = 0;
    env[static_cast<std::size_t>(bvar(enc, 1))] = 1;
    // Keep only label/pinning clauses: drop window-bound arithmetic.
    std::vector<Term> label_clauses;
    for (const Term& t : enc.hard)
        if (t->kind == Kind::Or || t->kind == Kind::Var) label_clauses.push_back(t);
    REQUIRE(count_structural_models(enc, bools, label_clauses, env, 0) == 1);
}

TEST_CASE("child-assignment count at node 3 follows the encoding") {
    // Models of the child-uniqueness constraints alone: node 3 picks one of
    // two left children and one of two right children.
    PredicateGrammar grammar = gt_only();
    LabeledDataset d;
    d.push_back(boxes1({{0.0, 1.0}}), Label::Desired);
    Encoding enc = init_encoding(3, grammar, 1, threshold_domains(grammar, d));
    build_structural(enc);
    std::vector<VarId> bools;
    for (int k = 1; k < 3; ++k) {
        bools.push_back(lvar(enc, 3, k));
        bools.push_back(rvar(enc, 3, k));
    }
    // Select exactly the child-uniqueness clauses for node 3.
    std::vector<Term> clauses;
    for (const Term& t : enc.hard) {
        bool mentions = false, only_children = true;
        auto scan = [&](auto&& self, const Term& u) -> void {
            if (u->kind == Kind::Var) {
                bool is_child = false;
                for (VarId v : bools) is_child |= (v == u->var);
                mentions |= is_child;
                only_children &= is_child;
            }
            for (const Term& a : u->args) self(self, a);
        };
        scan(scan, t);
        if (mentions && only_children) clauses.push_back(t);
    }
    std::vector<double> env(enc.vars.size(), 0.0);
    REQUIRE(count_structural_models(enc, bools, clauses, env, 0) == 4);
}

TEST_CASE("semantic constraints pin atomic worst and best case values") {
    PredicateGrammar grammar = gt_only();
    LabeledDataset d;
    d.push_back(boxes1({{4.0, 9.0}}), Label::Desired);
    Encoding enc = init_encoding(1, grammar, 1, threshold_domains(grammar, d));
    build_structural(enc);
    build_semantic_interval(enc, grammar, d[0].first);
    build_objective_Y(enc, {Label::Desired});

    // Solve with the internal backend and inspect the model's y values:
    // worst case 4 - c, best case 9 - c at the returned threshold.
    InternalSolver solver;
    SolverModel m = solver.optimize(enc, 10.0);
    REQUIRE(m.status == SolveStatus::Optimal);
    const double c = m.rval(cvar(enc, 1, 0));
    REQUIRE(m.rval(enc.ylo[0][0][0]) == 4.0 - c);
    REQUIRE(m.rval(enc.yhi[0][0][0]) == 9.0 - c);
    // Y is maximized by the smallest admissible threshold: domain lo = 3.
    REQUIRE_THAT(c, Catch::Matchers::WithinAbs(3.0, 1e-9));
    REQUIRE_THAT(*m.objective, Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("decode reconstructs structure, windows and shared children") {
    PredicateGrammar grammar = gt_only();
    LabeledDataset d;
    d.push_back(boxes1({{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}), Label::Desired);
    Encoding enc = init_encoding(3, grammar, 3, threshold_domains(grammar, d));
    build_structural(enc);

    SolverModel m;
    m.status = SolveStatus::Sat;
    m.values.assign(enc.vars.size(), 0.0);
    auto set = [&](VarId v, double x) { m.values[static_cast<std::size_t>(v)] = x; };
    // Node 1: atom with threshold 0.5; node 2: F[1,3) over node 1;
    // node 3: node1 U[0,2) node2 -- node 1 is shared.
    set(xvar(enc, 1, 0), 1);
    set(cvar(enc, 1, 0), 0.5);
    set(avar(enc, 1), 0);
    set(bvar(enc, 1), 3);
    std::size_t ev_lam = static_cast<std::size_t>(enc.num_atoms) + 5;  // Eventually
    REQUIRE(enc.label_op(ev_lam) == OpSym::Eventually);
    set(xvar(enc, 2, ev_lam), 1);
    set(lvar(enc, 2, 1), 1);
    set(rvar(enc, 2, 1), 1);
    set(avar(enc, 2), 1);
    set(bvar(enc, 2), 3);
    std::size_t un_lam = static_cast<std::size_t>(enc.num_atoms) + 7;  // Until
    REQUIRE(enc.label_op(un_lam) == OpSym::Until);
    set(xvar(enc, 3, un_lam), 1);
    set(lvar(enc, 3, 1), 1);
    set(rvar(enc, 3, 2), 1);
    set(avar(enc, 3), 0);
    set(bvar(enc, 3), 2);

    StlFormula f = decode_model(enc, m, grammar);
    REQUIRE(f->op == Op::Until);
    REQUIRE(f->window == TimeWindow(0, 2));
    REQUIRE(f->left->op == Op::Pred);
    REQUIRE(f->left->pred.threshold == 0.5);
    REQUIRE(f->right->op == Op::Eventually);
    REQUIRE(f->right->window == TimeWindow(1, 3));
    // Shared node: the Until's left child is the same object as F's child.
    REQUIRE(f->left.get() == f->right->left.get());
    REQUIRE(formula_size(f) == 3);

    SECTION("malformed models are rejected") {
        set(xvar(enc, 3, 0), 1);  // second label on node 3
        REQUIRE_THROWS_AS(decode_model(enc, m, grammar), std::runtime_error);
    }
}

TEST_CASE("smtlib emission is deterministic and complete") {
    PredicateGrammar grammar = gt_only();
    LabeledDataset d;
    d.push_back(boxes1({{4.0, 9.0}}), Label::Desired);
    d.push_back(boxes1({{1.0, 6.0}}), Label::Undesired);
    auto make = [&] {
        Encoding enc = init_encoding(1, grammar, 1, threshold_domains(grammar, d));
        build_structural(enc);
        for (const auto& [it, l] : d.entries()) build_semantic_interval(enc, grammar, it);
        build_objective_Y(enc, {Label::Desired, Label::Undesired});
        return to_smtlib(enc);
    };
    std::string script = make();
    REQUIRE(script == make());  // byte-exact reproducibility
    REQUIRE(script.find("(declare-const x1_p1 Bool)") != std::string::npos);
    REQUIRE(script.find("(maximize Y)") != std::string::npos);
    REQUIRE(script.find("(check-sat)") != std::string::npos);
    REQUIRE(script.find("(get-value") != std::string::npos);
    // Negative constants use the SMT-LIB unary minus form.
    REQUIRE(script.find("(- ") != std::string::npos);
}

TEST_CASE("point-mode consistency constraints carry unit weights") {
    PredicateGrammar grammar = gt_only();
    PointDataset d;
    d.push_back(Trajectory(std::vector<std::vector<double>>{{6.0}}), Label::Desired);
    d.push_back(Trajectory(std::vector<std::vector<double>>{{1.0}}), Label::Undesired);
    Encoding enc = init_encoding(1, grammar, 1, threshold_domains(grammar, d));
    build_structural(enc);
    for (const auto& [t, l] : d.entries()) build_semantic_point(enc, grammar, t);
    build_consistency(enc, {Label::Desired, Label::Undesired});
    REQUIRE(enc.soft.size() == 2);
    REQUIRE(enc.soft[0].second == 1.0);
    REQUIRE(enc.soft[1].second == 1.0);
    // +1 entries get the positive literal, -1 entries the negated one.
    REQUIRE(enc.soft[0].first->kind == Kind::Var);
    REQUIRE(enc.soft[1].first->kind == Kind::Not);

    std::string script = to_smtlib(enc);
    REQUIRE(script.find("(assert-soft ") != std::string::npos);
    REQUIRE(script.find(":weight 1") != std::string::npos);
    SmtEmitOptions hard;
    hard.soft_as_hard = true;
    std::string plain = to_smtlib(enc, hard);
    REQUIRE(plain.find("assert-soft") == std::string::npos);
}

TEST_CASE("re-encoding a decoded formula keeps it expressible") {
    // Round-trip sanity: decode a model, then check the formula against the
    // objective module on the encoded dataset.
    PredicateGrammar grammar = gt_only();
    LabeledDataset d;
    d.push_back(boxes1({{4.0, 9.0}}), Label::Desired);
    d.push_back(boxes1({{1.0, 6.0}}), Label::Undesired);
    Encoding enc = init_encoding(1, grammar, 1, threshold_domains(grammar, d));
    build_structural(enc);
    for (const auto& [it, l] : d.entries()) build_semantic_interval(enc, grammar, it);
    build_objective_Y(enc, {Label::Desired, Label::Undesired});
    InternalSolver solver;
    SolverModel m = solver.optimize(enc, 10.0);
    REQUIRE(m.status == SolveStatus::Optimal);
    StlFormula f = decode_model(enc, m, grammar);
    REQUIRE_THAT(objective_dataset(d, f), Catch::Matchers::WithinAbs(*m.objective, 1e-6));
    REQUIRE_THAT(*m.objective, Catch::Matchers::WithinAbs(-1.0, 1e-6));
    REQUIRE_THAT(f->pred.threshold, Catch::Matchers::WithinAbs(5.0, 1e-6));
}
