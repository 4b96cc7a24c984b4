#pragma once

// Constraint IR shared by the solver backends. The encoder lowers the
// syntax-DAG constraint system into typed variables plus a list of hard
// assertions, optional weighted soft assertions, and an optional real
// objective to maximize. The external backend serializes this IR to the
// SMT-LIB interchange format; the internal backend interprets it directly.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace uastl::ir {

using VarId = std::int32_t;

enum class Sort { Bool, Int, Real };

struct VarInfo {
    std::string name;
    Sort sort = Sort::Bool;
    bool bounded = false;
    double lo = 0.0;  // meaningful when bounded
    double hi = 0.0;
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

enum class Kind {
    BoolConst,
    NumConst,
    Var,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Eq,   // numeric equality
    Le,
    Lt,
    Neg,
    Add,
    Sub,
    Min,
    Max,
};

struct TermNode {
    Kind kind = Kind::BoolConst;
    bool bval = false;       // BoolConst
    double num = 0.0;        // NumConst
    bool num_is_int = false; // NumConst printed as an integer literal
    VarId var = -1;          // Var
    std::vector<Term> args;
};

inline Term tbool(bool v) {
    auto n = std::make_shared<TermNode>();
    n->kind = Kind::BoolConst;
    n->bval = v;
    return n;
}
inline Term treal(double v) {
    auto n = std::make_shared<TermNode>();
    n->kind = Kind::NumConst;
    n->num = v;
    return n;
}
inline Term tint(long v) {
    auto n = std::make_shared<TermNode>();
    n->kind = Kind::NumConst;
    n->num = static_cast<double>(v);
    n->num_is_int = true;
    return n;
}
inline Term tvar(VarId v) {
    auto n = std::make_shared<TermNode>();
    n->kind = Kind::Var;
    n->var = v;
    return n;
}
inline Term tapp(Kind k, std::vector<Term> args) {
    auto n = std::make_shared<TermNode>();
    n->kind = k;
    n->args = std::move(args);
    return n;
}
inline Term tnot(Term a) { return tapp(Kind::Not, {std::move(a)}); }
inline Term tand(std::vector<Term> args) {
    if (args.empty()) return tbool(true);
    if (args.size() == 1) return args[0];
    return tapp(Kind::And, std::move(args));
}
inline Term tor(std::vector<Term> args) {
    if (args.empty()) return tbool(false);
    if (args.size() == 1) return args[0];
    return tapp(Kind::Or, std::move(args));
}
inline Term timplies(Term a, Term b) { return tapp(Kind::Implies, {std::move(a), std::move(b)}); }
inline Term tiff(Term a, Term b) { return tapp(Kind::Iff, {std::move(a), std::move(b)}); }
inline Term teq(Term a, Term b) { return tapp(Kind::Eq, {std::move(a), std::move(b)}); }
inline Term tle(Term a, Term b) { return tapp(Kind::Le, {std::move(a), std::move(b)}); }
inline Term tlt(Term a, Term b) { return tapp(Kind::Lt, {std::move(a), std::move(b)}); }
inline Term tneg(Term a) { return tapp(Kind::Neg, {std::move(a)}); }
inline Term tsub(Term a, Term b) { return tapp(Kind::Sub, {std::move(a), std::move(b)}); }
inline Term tmin(std::vector<Term> args) {
    if (args.empty()) throw std::invalid_argument("tmin: no arguments");
    if (args.size() == 1) return args[0];
    return tapp(Kind::Min, std::move(args));
}
inline Term tmax(std::vector<Term> args) {
    if (args.empty()) throw std::invalid_argument("tmax: no arguments");
    if (args.size() == 1) return args[0];
    return tapp(Kind::Max, std::move(args));
}

/// Symbolic node labels of the syntax DAG: the grammar's atoms followed by
/// the operator alphabet, in a fixed order shared by encoder and decoder.
enum class OpSym { True, Not, And, Or, Implies, Eventually, Always, Until };
inline constexpr OpSym kOpOrder[] = {OpSym::True,    OpSym::Not,        OpSym::And,
                                     OpSym::Or,      OpSym::Implies,    OpSym::Eventually,
                                     OpSym::Always,  OpSym::Until};
inline constexpr const char* op_sym_name(OpSym s) {
    switch (s) {
        case OpSym::True: return "top";
        case OpSym::Not: return "not";
        case OpSym::And: return "and";
        case OpSym::Or: return "or";
        case OpSym::Implies: return "imp";
        case OpSym::Eventually: return "ev";
        case OpSym::Always: return "al";
        case OpSym::Until: return "un";
    }
    return "?";
}
inline constexpr bool op_sym_temporal(OpSym s) {
    return s == OpSym::Eventually || s == OpSym::Always || s == OpSym::Until;
}
inline constexpr bool op_sym_binary(OpSym s) {
    return s == OpSym::And || s == OpSym::Or || s == OpSym::Implies || s == OpSym::Until;
}
inline constexpr bool op_sym_unary(OpSym s) {
    return s == OpSym::Not || s == OpSym::Eventually || s == OpSym::Always;
}

enum class SemanticsMode { None, Interval, Point };

struct Encoding {
    // Variable registry; VarId indexes into this vector.
    std::vector<VarInfo> vars;
    std::vector<Term> hard;
    std::vector<std::pair<Term, double>> soft;
    std::optional<Term> objective;  // real term to maximize

    // --- structural metadata -------------------------------------------------
    int n = 0;        // number of DAG nodes
    int horizon = 0;  // |zeta|
    int num_atoms = 0;
    double inf_value = 0.0;      // finite stand-in for +inf robustness
    double threshold_step = 0.0; // restrict thresholds to a grid when > 0
    SemanticsMode mode = SemanticsMode::None;
    int num_entries = 0;

    // Variable tables (node identifiers are 1-based, as in the encoding).
    std::vector<std::vector<VarId>> x;      // x[i][lambda]: atoms then kOpOrder
    std::vector<std::vector<VarId>> l, r;   // l[i][k], r[i][k], k in 1..i-1
    std::vector<VarId> a, b;                // window bounds per node
    std::vector<std::vector<VarId>> c;      // c[i][q]: threshold of atom q at node i
    // Interval mode: ylo/yhi[entry][i][j]; point mode: ys/yw[entry][i][j]
    // (strong and weak Boolean tables) plus sb/wb[entry][i] for positions
    // beyond the horizon.
    std::vector<std::vector<std::vector<VarId>>> ylo, yhi;
    std::vector<std::vector<std::vector<VarId>>> ys, yw;
    std::vector<std::vector<VarId>> sb, wb;
    VarId objective_var = -1;

    VarId add_var(std::string name, Sort sort) {
        vars.push_back({std::move(name), sort});
        return static_cast<VarId>(vars.size() - 1);
    }
    VarId add_bounded_var(std::string name, Sort sort, double lo, double hi) {
        vars.push_back({std::move(name), sort, true, lo, hi});
        return static_cast<VarId>(vars.size() - 1);
    }

    std::size_t num_labels() const { return static_cast<std::size_t>(num_atoms) + 8; }
    bool label_is_atom(std::size_t lambda) const {
        return lambda < static_cast<std::size_t>(num_atoms);
    }
    OpSym label_op(std::size_t lambda) const {
        return kOpOrder[lambda - static_cast<std::size_t>(num_atoms)];
    }
};

/// Model returned by a backend: a total assignment plus solve status.
enum class SolveStatus { Optimal, Sat, Unsat, TimedOut, Error };

struct SolverModel {
    SolveStatus status = SolveStatus::Error;
    std::vector<double> values;  // indexed by VarId; booleans stored as 0/1
    std::optional<double> objective;
    std::string message;

    bool has_model() const {
        return status == SolveStatus::Optimal || status == SolveStatus::Sat ||
               (status == SolveStatus::TimedOut && !values.empty());
    }
    bool bval(VarId v) const { return values.at(static_cast<std::size_t>(v)) != 0.0; }
    long ival(VarId v) const {
        return static_cast<long>(values.at(static_cast<std::size_t>(v)));
    }
    double rval(VarId v) const { return values.at(static_cast<std::size_t>(v)); }
};

}  // namespace uastl::ir
