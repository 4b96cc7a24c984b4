#pragma once

// STL formulas as syntax DAGs. Nodes are immutable and shared through
// shared_ptr, so a subformula used twice is stored once and the size of a
// formula is the number of distinct nodes reachable from the root.

#include <charconv>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "uastl/core.hpp"

namespace uastl {

enum class Op {
    True,        // the Boolean constant
    Pred,        // atomic predicate f(x) > 0
    Not,
    And,
    Or,
    Implies,
    Eventually,  // F_[a,b)
    Always,      // G_[a,b)
    Until,       // U_[a,b)
};

inline bool op_is_temporal(Op op) {
    return op == Op::Eventually || op == Op::Always || op == Op::Until;
}
inline bool op_is_unary(Op op) {
    return op == Op::Not || op == Op::Eventually || op == Op::Always;
}
inline bool op_is_binary(Op op) {
    return op == Op::And || op == Op::Or || op == Op::Implies || op == Op::Until;
}
inline bool op_is_leaf(Op op) { return op == Op::True || op == Op::Pred; }

/// Discrete time window [a, b) of timestep offsets, 0 <= a < b.
struct TimeWindow {
    int a = 0;
    int b = 1;

    TimeWindow() = default;
    TimeWindow(int a_, int b_) : a(a_), b(b_) {
        if (a < 0 || a >= b)
            throw std::invalid_argument("TimeWindow: requires 0 <= a < b");
    }
    bool operator==(const TimeWindow&) const = default;
};

struct FormulaNode;
/// A formula is a shared pointer to its root node.
using StlFormula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
    Op op;
    Predicate pred;      // valid when op == Pred
    TimeWindow window;   // valid when op is temporal
    StlFormula left;     // single child of unary nodes
    StlFormula right;    // second child of binary nodes
};

// ---- builders -------------------------------------------------------------

inline StlFormula f_true() {
    return std::make_shared<FormulaNode>(FormulaNode{Op::True, {}, {}, nullptr, nullptr});
}
inline StlFormula f_pred(Predicate p) {
    return std::make_shared<FormulaNode>(
        FormulaNode{Op::Pred, std::move(p), {}, nullptr, nullptr});
}
inline StlFormula f_not(StlFormula a) {
    if (!a) throw std::invalid_argument("f_not: null child");
    return std::make_shared<FormulaNode>(
        FormulaNode{Op::Not, {}, {}, std::move(a), nullptr});
}
inline StlFormula f_and(StlFormula a, StlFormula b) {
    if (!a || !b) throw std::invalid_argument("f_and: null child");
    return std::make_shared<FormulaNode>(
        FormulaNode{Op::And, {}, {}, std::move(a), std::move(b)});
}
inline StlFormula f_or(StlFormula a, StlFormula b) {
    if (!a || !b) throw std::invalid_argument("f_or: null child");
    return std::make_shared<FormulaNode>(
        FormulaNode{Op::Or, {}, {}, std::move(a), std::move(b)});
}
inline StlFormula f_implies(StlFormula a, StlFormula b) {
    if (!a || !b) throw std::invalid_argument("f_implies: null child");
    return std::make_shared<FormulaNode>(
        FormulaNode{Op::Implies, {}, {}, std::move(a), std::move(b)});
}
inline StlFormula f_eventually(TimeWindow w, StlFormula a) {
    if (!a) throw std::invalid_argument("f_eventually: null child");
    return std::make_shared<FormulaNode>(
        FormulaNode{Op::Eventually, {}, w, std::move(a), nullptr});
}
inline StlFormula f_always(TimeWindow w, StlFormula a) {
    if (!a) throw std::invalid_argument("f_always: null child");
    return std::make_shared<FormulaNode>(
        FormulaNode{Op::Always, {}, w, std::move(a), nullptr});
}
inline StlFormula f_until(TimeWindow w, StlFormula a, StlFormula b) {
    if (!a || !b) throw std::invalid_argument("f_until: null child");
    return std::make_shared<FormulaNode>(
        FormulaNode{Op::Until, {}, w, std::move(a), std::move(b)});
}
/// The falsum shorthand; C has no bottom constant, so this is !T.
inline StlFormula f_false() { return f_not(f_true()); }

// ---- size & traversal -----------------------------------------------------

/// Number of distinct DAG nodes reachable from the root; shared subformulas
/// count once.
inline std::size_t formula_size(const StlFormula& f) {
    if (!f) throw std::invalid_argument("formula_size: null formula");
    std::unordered_set<const FormulaNode*> seen;
    std::vector<const FormulaNode*> stack{f.get()};
    while (!stack.empty()) {
        const FormulaNode* n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second) continue;
        if (n->left) stack.push_back(n->left.get());
        if (n->right) stack.push_back(n->right.get());
    }
    return seen.size();
}

/// Same affine function: coefficient vectors may differ in trailing zeros.
inline bool predicate_equivalent(const Predicate& a, const Predicate& b) {
    if (a.sense != b.sense || a.threshold != b.threshold) return false;
    const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
    for (std::size_t k = 0; k < n; ++k) {
        const double wa = k < a.coeffs.size() ? a.coeffs[k] : 0.0;
        const double wb = k < b.coeffs.size() ? b.coeffs[k] : 0.0;
        if (wa != wb) return false;
    }
    return true;
}

/// Structural equality, ignoring node sharing.
inline bool formula_equal(const StlFormula& a, const StlFormula& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->op != b->op) return false;
    if (a->op == Op::Pred && !predicate_equivalent(a->pred, b->pred)) return false;
    if (op_is_temporal(a->op) && !(a->window == b->window)) return false;
    if ((a->left != nullptr) != (b->left != nullptr)) return false;
    if ((a->right != nullptr) != (b->right != nullptr)) return false;
    if (a->left && !formula_equal(a->left, b->left)) return false;
    if (a->right && !formula_equal(a->right, b->right)) return false;
    return true;
}

/// Largest signal dimension index referenced by any predicate (1-based),
/// 0 when the formula has no predicates.
inline std::size_t formula_dims(const StlFormula& f) {
    std::size_t d = 0;
    std::unordered_set<const FormulaNode*> seen;
    std::vector<const FormulaNode*> stack{f.get()};
    while (!stack.empty()) {
        const FormulaNode* n = stack.back();
        stack.pop_back();
        if (!n || !seen.insert(n).second) continue;
        if (n->op == Op::Pred)
            for (std::size_t k = 0; k < n->pred.coeffs.size(); ++k)
                if (n->pred.coeffs[k] != 0.0) d = std::max(d, k + 1);
        if (n->left) stack.push_back(n->left.get());
        if (n->right) stack.push_back(n->right.get());
    }
    return d;
}

// ---- printing -------------------------------------------------------------

namespace detail {

inline std::string format_real(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Precedence levels, loosest first: ->, |, &, U, unary (! F G), atoms.
inline int op_precedence(Op op) {
    switch (op) {
        case Op::Implies: return 0;
        case Op::Or: return 1;
        case Op::And: return 2;
        case Op::Until: return 3;
        case Op::Not:
        case Op::Eventually:
        case Op::Always: return 4;
        default: return 5;
    }
}

inline std::string predicate_text(const Predicate& p) {
    // The text grammar covers x<k>, x<k>+x<m> and x<k>-x<m> shapes only.
    int first = -1, second = -1;
    for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
        if (p.coeffs[k] == 0.0) continue;
        if (first < 0) first = static_cast<int>(k);
        else if (second < 0) second = static_cast<int>(k);
        else throw std::domain_error("predicate not expressible in text grammar");
    }
    if (first < 0 || p.coeffs[first] != 1.0)
        throw std::domain_error("predicate not expressible in text grammar");
    std::string s = "x" + std::to_string(first + 1);
    if (second >= 0) {
        if (p.coeffs[second] == 1.0) s += " + ";
        else if (p.coeffs[second] == -1.0) s += " - ";
        else throw std::domain_error("predicate not expressible in text grammar");
        s += "x" + std::to_string(second + 1);
    }
    s += p.sense == Sense::Gt ? " > " : " < ";
    s += format_real(p.threshold);
    return s;
}

inline std::string window_text(const TimeWindow& w) {
    return "[" + std::to_string(w.a) + "," + std::to_string(w.b) + ")";
}

inline void print_rec(const StlFormula& f, int parent_prec, std::string& out);

// Operands of prefix operators: predicates always get parentheses so the
// comparison does not run into surrounding text.
inline void print_operand(const StlFormula& f, std::string& out) {
    if (f->op == Op::Pred) {
        out += "(";
        print_rec(f, 0, out);
        out += ")";
    } else {
        print_rec(f, 5, out);
    }
}

inline void print_rec(const StlFormula& f, int parent_prec, std::string& out) {
    const int prec = op_precedence(f->op);
    const bool parens = prec < parent_prec;
    if (parens) out += "(";
    switch (f->op) {
        case Op::True: out += "T"; break;
        case Op::Pred: out += predicate_text(f->pred); break;
        case Op::Not:
            out += "!";
            print_operand(f->left, out);
            break;
        case Op::Eventually:
            out += "F" + window_text(f->window);
            print_operand(f->left, out);
            break;
        case Op::Always:
            out += "G" + window_text(f->window);
            print_operand(f->left, out);
            break;
        case Op::Until:
            print_rec(f->left, prec + 1, out);
            out += " U" + window_text(f->window) + " ";
            print_rec(f->right, prec + 1, out);
            break;
        case Op::And:
            print_rec(f->left, prec, out);
            out += " & ";
            print_rec(f->right, prec + 1, out);
            break;
        case Op::Or:
            print_rec(f->left, prec, out);
            out += " | ";
            print_rec(f->right, prec + 1, out);
            break;
        case Op::Implies:
            print_rec(f->left, prec + 1, out);
            out += " -> ";
            print_rec(f->right, prec, out);
            break;
    }
    if (parens) out += ")";
}

}  // namespace detail

/// Render a formula in the ASCII grammar accepted by parse_formula, e.g.
/// "G[1,5)(x1 > 3.8) | F[3,4)(x1 < 0.75)".
inline std::string print_formula(const StlFormula& f) {
    if (!f) throw std::invalid_argument("print_formula: null formula");
    std::string out;
    detail::print_rec(f, 0, out);
    return out;
}

}  // namespace uastl
