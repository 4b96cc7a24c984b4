// minismt: a small optimizing solver for the SMT-LIB fragment the encoder
// emits (quantifier-free linear arithmetic over Bool/Int/Real with ite and
// let, plus (maximize ...) and (assert-soft ... :weight w)).
//
// Search strategy: DPLL over the Boolean and bounded-integer variables with
// guarded-definition propagation, then numeric optimization over the free
// bounded reals (grid sweep with geometric refinement, coordinate descent
// when several are live). Defined reals (equalities under satisfied guards)
// are resolved by propagation. Intended as a drop-in external solver for
// development and testing; any SMT-LIB-compatible optimizing solver can be
// used instead.
//
// Usage: minismt [file]    (reads stdin when no file is given)

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace {

// ---- s-expressions ---------------------------------------------------------

struct Sexp {
    std::string atom;
    std::vector<Sexp> items;
    bool is_atom() const { return items.empty() && !atom.empty(); }
};

struct SexpReader {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size()) {
            if (std::isspace(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            } else if (text[pos] == ';') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    Sexp read() {
        skip_ws();
        if (pos >= text.size()) throw std::runtime_error("unexpected end of script");
        if (text[pos] == '(') {
            ++pos;
            Sexp s;
            while (true) {
                skip_ws();
                if (pos >= text.size()) throw std::runtime_error("unbalanced '('");
                if (text[pos] == ')') {
                    ++pos;
                    if (s.items.empty()) s.atom = "";  // () stays a list
                    return s;
                }
                s.items.push_back(read());
            }
        }
        std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
               text[pos] != '(' && text[pos] != ')')
            ++pos;
        Sexp s;
        s.atom = text.substr(start, pos - start);
        return s;
    }
};

// ---- terms -------------------------------------------------------------------

enum class Sort { Bool, Int, Real };

enum class Kind { BoolConst, NumConst, Var, Not, And, Or, Implies, Eq, Le, Lt, Add, Sub, Neg, Mul, Ite };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    Kind kind = Kind::BoolConst;
    bool bval = false;
    double num = 0.0;
    int var = -1;
    std::vector<TermPtr> args;
};

TermPtr mk(Kind k, std::vector<TermPtr> args) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    t->args = std::move(args);
    return t;
}
TermPtr mk_bool(bool v) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::BoolConst;
    t->bval = v;
    return t;
}
TermPtr mk_num(double v) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::NumConst;
    t->num = v;
    return t;
}
TermPtr mk_var(int v) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Var;
    t->var = v;
    return t;
}

// ---- problem state -------------------------------------------------------------

struct Variable {
    std::string name;
    Sort sort = Sort::Bool;
    // Bounds harvested from the assertions, for Int enumeration and Real sweeps.
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool defined = false;  // appears as the left side of a guarded equality
};

struct Problem {
    std::vector<Variable> vars;
    std::unordered_map<std::string, int> by_name;
    std::vector<TermPtr> asserts;
    std::vector<std::pair<TermPtr, double>> softs;
    std::optional<TermPtr> objective;
    std::vector<std::string> value_queries;  // from get-value, in order
    bool want_objectives = false;
};

[[noreturn]] void die(const std::string& msg) {
    std::cout << "(error \"" << msg << "\")" << std::endl;
    std::exit(1);
}

double parse_number(const std::string& a, bool& ok) {
    char* end = nullptr;
    double v = std::strtod(a.c_str(), &end);
    ok = end && *end == '\0' && end != a.c_str();
    return v;
}

TermPtr build_term(const Sexp& s, Problem& p,
                   std::vector<std::pair<std::string, TermPtr>>& lets) {
    if (s.is_atom()) {
        if (s.atom == "true") return mk_bool(true);
        if (s.atom == "false") return mk_bool(false);
        for (auto it = lets.rbegin(); it != lets.rend(); ++it)
            if (it->first == s.atom) return it->second;
        auto found = p.by_name.find(s.atom);
        if (found != p.by_name.end()) return mk_var(found->second);
        bool ok = false;
        double v = parse_number(s.atom, ok);
        if (!ok) die("unknown symbol '" + s.atom + "'");
        return mk_num(v);
    }
    if (s.items.empty()) die("empty term");
    const std::string& head = s.items[0].atom;
    auto sub = [&](std::size_t i) { return build_term(s.items[i], p, lets); };

    if (head == "let") {
        if (s.items.size() != 3) die("let arity");
        std::size_t opened = 0;
        for (const Sexp& binding : s.items[1].items) {
            if (binding.items.size() != 2) die("let binding shape");
            lets.emplace_back(binding.items[0].atom, build_term(binding.items[1], p, lets));
            ++opened;
        }
        TermPtr body = build_term(s.items[2], p, lets);
        lets.resize(lets.size() - opened);
        return body;
    }
    std::vector<TermPtr> args;
    for (std::size_t i = 1; i < s.items.size(); ++i) args.push_back(sub(i));

    if (head == "not") return mk(Kind::Not, std::move(args));
    if (head == "and") return mk(Kind::And, std::move(args));
    if (head == "or") return mk(Kind::Or, std::move(args));
    if (head == "=>") return mk(Kind::Implies, std::move(args));
    if (head == "=") return mk(Kind::Eq, std::move(args));
    if (head == "<=") return mk(Kind::Le, std::move(args));
    if (head == "<") return mk(Kind::Lt, std::move(args));
    if (head == ">=") return mk(Kind::Le, {args[1], args[0]});
    if (head == ">") return mk(Kind::Lt, {args[1], args[0]});
    if (head == "+") return mk(Kind::Add, std::move(args));
    if (head == "*") return mk(Kind::Mul, std::move(args));
    if (head == "-") {
        if (args.size() == 1) return mk(Kind::Neg, std::move(args));
        return mk(Kind::Sub, std::move(args));
    }
    if (head == "ite") return mk(Kind::Ite, std::move(args));
    die("unsupported operator '" + head + "'");
}

// ---- three-valued evaluation -----------------------------------------------------

// Assignment: NaN for unassigned; bools stored as 0/1.
struct Eval {
    const std::vector<double>* env;

    static bool known(double v) { return !std::isnan(v); }

    // Returns NaN when the value is not determined yet.
    double num(const TermPtr& t) const {
        switch (t->kind) {
            case Kind::NumConst: return t->num;
            case Kind::Var: return (*env)[static_cast<std::size_t>(t->var)];
            case Kind::Neg: {
                double a = num(t->args[0]);
                return known(a) ? -a : a;
            }
            case Kind::Sub: {
                double a = num(t->args[0]), b = num(t->args[1]);
                return known(a) && known(b) ? a - b : std::nan("");
            }
            case Kind::Add: {
                double acc = 0;
                for (const TermPtr& a : t->args) {
                    double v = num(a);
                    if (!known(v)) return v;
                    acc += v;
                }
                return acc;
            }
            case Kind::Mul: {
                double acc = 1;
                for (const TermPtr& a : t->args) {
                    double v = num(a);
                    if (!known(v)) return v;
                    acc *= v;
                }
                return acc;
            }
            case Kind::Ite: {
                int c = boolean(t->args[0]);
                if (c < 0) return std::nan("");
                return num(t->args[c == 1 ? 1 : 2]);
            }
            default: return std::nan("");
        }
    }

    // -1 unknown, 0 false, 1 true.
    int boolean(const TermPtr& t) const {
        switch (t->kind) {
            case Kind::BoolConst: return t->bval ? 1 : 0;
            case Kind::Var: {
                double v = (*env)[static_cast<std::size_t>(t->var)];
                return known(v) ? (v != 0.0 ? 1 : 0) : -1;
            }
            case Kind::Not: {
                int a = boolean(t->args[0]);
                return a < 0 ? -1 : 1 - a;
            }
            case Kind::And: {
                bool unknown = false;
                for (const TermPtr& a : t->args) {
                    int v = boolean(a);
                    if (v == 0) return 0;
                    unknown |= (v < 0);
                }
                return unknown ? -1 : 1;
            }
            case Kind::Or: {
                bool unknown = false;
                for (const TermPtr& a : t->args) {
                    int v = boolean(a);
                    if (v == 1) return 1;
                    unknown |= (v < 0);
                }
                return unknown ? -1 : 0;
            }
            case Kind::Implies: {
                int a = boolean(t->args[0]);
                if (a == 0) return 1;
                int b = boolean(t->args[1]);
                if (a == 1) return b;
                return b == 1 ? 1 : -1;
            }
            case Kind::Eq: {
                // Boolean equality when both sides are Boolean-sorted.
                if (is_bool_term(t->args[0]) && is_bool_term(t->args[1])) {
                    int a = boolean(t->args[0]), b = boolean(t->args[1]);
                    if (a < 0 || b < 0) return -1;
                    return a == b ? 1 : 0;
                }
                double a = num(t->args[0]), b = num(t->args[1]);
                if (!known(a) || !known(b)) return -1;
                return a == b ? 1 : 0;
            }
            case Kind::Le: {
                double a = num(t->args[0]), b = num(t->args[1]);
                if (!known(a) || !known(b)) return -1;
                return a <= b ? 1 : 0;
            }
            case Kind::Lt: {
                double a = num(t->args[0]), b = num(t->args[1]);
                if (!known(a) || !known(b)) return -1;
                return a < b ? 1 : 0;
            }
            default: return -1;
        }
    }

    // Conservative sort inference for '=' disambiguation.
    bool is_bool_term(const TermPtr& t) const {
        switch (t->kind) {
            case Kind::BoolConst:
            case Kind::Not:
            case Kind::And:
            case Kind::Or:
            case Kind::Implies:
            case Kind::Le:
            case Kind::Lt:
                return true;
            case Kind::Eq: return true;  // nested = only appears on bools here
            case Kind::Var: return var_sorts && (*var_sorts)[static_cast<std::size_t>(t->var)] == Sort::Bool;
            case Kind::Ite: return is_bool_term(t->args[1]);
            default: return false;
        }
    }

    const std::vector<Sort>* var_sorts = nullptr;
};

// ---- the solver -----------------------------------------------------------------

class Solver {
public:
    explicit Solver(Problem& p) : p_(p) {
        sorts_.reserve(p.vars.size());
        for (const Variable& v : p.vars) sorts_.push_back(v.sort);
        harvest_bounds();
        mark_defined();
        for (std::size_t i = 0; i < p.vars.size(); ++i) {
            const Variable& v = p.vars[i];
            if (v.defined) continue;
            if (v.sort == Sort::Bool) decisions_.push_back(static_cast<int>(i));
            if (v.sort == Sort::Int) {
                if (std::isinf(v.lo) || std::isinf(v.hi))
                    die("integer variable '" + v.name + "' has no finite bounds");
                decisions_.push_back(static_cast<int>(i));
            }
        }
    }

    bool solve() {
        env_.assign(p_.vars.size(), std::nan(""));
        std::vector<double> trail;
        search(0);
        return found_;
    }

    const std::vector<double>& best_env() const { return best_env_; }
    double best_score() const { return best_score_; }

private:
    Problem& p_;
    std::vector<Sort> sorts_;
    std::vector<int> decisions_;
    std::vector<double> env_;
    std::vector<double> best_env_;
    double best_score_ = -std::numeric_limits<double>::infinity();
    bool found_ = false;
    // Per-leaf state: still-undetermined constraints and active definitions.
    std::vector<TermPtr> active_;
    std::vector<std::pair<int, TermPtr>> active_defs_;

    void harvest_bounds() {
        // A term with no variables folds to a number under an empty env.
        std::vector<double> empty(p_.vars.size(), std::nan(""));
        Eval ev;
        ev.env = &empty;
        ev.var_sorts = &sorts_;
        for (const TermPtr& t : p_.asserts) {
            if (t->kind != Kind::Le) continue;
            const TermPtr& a = t->args[0];
            const TermPtr& b = t->args[1];
            if (b->kind == Kind::Var) {
                double lo = ev.num(a);
                if (!std::isnan(lo))
                    p_.vars[static_cast<std::size_t>(b->var)].lo =
                        std::max(p_.vars[static_cast<std::size_t>(b->var)].lo, lo);
            }
            if (a->kind == Kind::Var) {
                double hi = ev.num(b);
                if (!std::isnan(hi))
                    p_.vars[static_cast<std::size_t>(a->var)].hi =
                        std::min(p_.vars[static_cast<std::size_t>(a->var)].hi, hi);
            }
        }
    }

    // A variable assigned through guarded equalities is never branched on.
    void mark_defined() {
        auto scan_defs = [&](auto&& self, const TermPtr& t) -> void {
            if (t->kind == Kind::Implies) {
                self(self, t->args[1]);
                return;
            }
            if (t->kind == Kind::And) {
                for (const TermPtr& a : t->args) self(self, a);
                return;
            }
            if (t->kind == Kind::Eq && t->args[0]->kind == Kind::Var) {
                Variable& v = p_.vars[static_cast<std::size_t>(t->args[0]->var)];
                if (v.sort != Sort::Int) v.defined = true;
            }
        };
        for (const TermPtr& t : p_.asserts) {
            if (t->kind == Kind::Implies) scan_defs(scan_defs, t->args[1]);
            if (t->kind == Kind::Eq && t->args[0]->kind == Kind::Var)
                scan_defs(scan_defs, t);
        }
    }

    Eval make_eval() const {
        Eval e;
        e.env = &env_;
        e.var_sorts = &sorts_;
        return e;
    }

    // Propagation: unit clauses, guarded definitions, pinned assignments.
    // Returns false on conflict; records assignments in `trail`.
    bool propagate(std::vector<int>& trail) {
        Eval ev = make_eval();
        bool changed = true;
        int rounds = 0;
        while (changed) {
            changed = false;
            if (++rounds > 10000) die("propagation did not converge");
            for (const TermPtr& t : p_.asserts) {
                int r = propagate_term(t, ev, trail, changed);
                if (r == 0) return false;
            }
        }
        return true;
    }

    bool assign(int var, double value, std::vector<int>& trail, bool& changed) {
        double& slot = env_[static_cast<std::size_t>(var)];
        if (!std::isnan(slot)) return slot == value;
        const Variable& v = p_.vars[static_cast<std::size_t>(var)];
        if (v.sort != Sort::Bool && (value < v.lo - 1e-12 || value > v.hi + 1e-12))
            return false;
        slot = value;
        trail.push_back(var);
        changed = true;
        return true;
    }

    // Returns 1 satisfied/indeterminate, 0 conflict.
    int propagate_term(const TermPtr& t, Eval& ev, std::vector<int>& trail, bool& changed) {
        switch (t->kind) {
            case Kind::Var:
                return assign(t->var, 1.0, trail, changed) ? 1 : 0;
            case Kind::Not:
                if (t->args[0]->kind == Kind::Var)
                    return assign(t->args[0]->var, 0.0, trail, changed) ? 1 : 0;
                return ev.boolean(t) == 0 ? 0 : 1;
            case Kind::And: {
                for (const TermPtr& a : t->args)
                    if (propagate_term(a, ev, trail, changed) == 0) return 0;
                return 1;
            }
            case Kind::Implies: {
                int g = ev.boolean(t->args[0]);
                if (g == 1) return propagate_term(t->args[1], ev, trail, changed);
                return 1;
            }
            case Kind::Or: {
                // Unit propagation over literal disjunctions.
                int unknown_count = 0;
                const TermPtr* unit = nullptr;
                for (const TermPtr& a : t->args) {
                    int v = ev.boolean(a);
                    if (v == 1) return 1;
                    if (v < 0) {
                        ++unknown_count;
                        unit = &a;
                    }
                }
                if (unknown_count == 0) return 0;
                if (unknown_count == 1) {
                    const TermPtr& lit = *unit;
                    if (lit->kind == Kind::Var)
                        return assign(lit->var, 1.0, trail, changed) ? 1 : 0;
                    if (lit->kind == Kind::Not && lit->args[0]->kind == Kind::Var)
                        return assign(lit->args[0]->var, 0.0, trail, changed) ? 1 : 0;
                }
                return 1;
            }
            case Kind::Eq: {
                if (t->args[0]->kind == Kind::Var) {
                    int var = t->args[0]->var;
                    if (sorts_[static_cast<std::size_t>(var)] == Sort::Bool) {
                        int rhs = ev.boolean(t->args[1]);
                        double cur = env_[static_cast<std::size_t>(var)];
                        if (rhs >= 0)
                            return assign(var, rhs, trail, changed) ? 1 : 0;
                        if (!std::isnan(cur)) return 1;  // wait for the rhs
                        return 1;
                    }
                    double rhs = ev.num(t->args[1]);
                    if (!std::isnan(rhs)) return assign(var, rhs, trail, changed) ? 1 : 0;
                    return 1;
                }
                return ev.boolean(t) == 0 ? 0 : 1;
            }
            default:
                return ev.boolean(t) == 0 ? 0 : 1;
        }
    }

    void undo(std::vector<int>& trail, std::size_t mark) {
        while (trail.size() > mark) {
            env_[static_cast<std::size_t>(trail.back())] = std::nan("");
            trail.pop_back();
        }
    }

    void search(std::size_t depth_unused) {
        (void)depth_unused;
        std::vector<int> trail;
        search_rec(trail);
    }

    void search_rec(std::vector<int>& trail) {
        const std::size_t mark = trail.size();
        bool dummy = false;
        (void)dummy;
        if (!propagate(trail)) {
            undo(trail, mark);
            return;
        }
        // Next unassigned decision variable, in declaration order.
        int pick = -1;
        for (int v : decisions_)
            if (std::isnan(env_[static_cast<std::size_t>(v)])) {
                pick = v;
                break;
            }
        if (pick < 0) {
            real_phase(trail);
            undo(trail, mark);
            return;
        }
        const Variable& v = p_.vars[static_cast<std::size_t>(pick)];
        if (v.sort == Sort::Bool) {
            for (double val : {1.0, 0.0}) {
                const std::size_t sub = trail.size();
                env_[static_cast<std::size_t>(pick)] = val;
                trail.push_back(pick);
                search_rec(trail);
                undo(trail, sub);
            }
        } else {
            for (long iv = static_cast<long>(v.lo); iv <= static_cast<long>(v.hi); ++iv) {
                const std::size_t sub = trail.size();
                env_[static_cast<std::size_t>(pick)] = static_cast<double>(iv);
                trail.push_back(pick);
                search_rec(trail);
                undo(trail, sub);
            }
        }
        undo(trail, mark);
    }

    // Flatten the assertions under the current finite assignment: drop the
    // ones already satisfied and the implication branches whose guards are
    // false, keep the rest for candidate checking, and extract the active
    // variable definitions for the support analysis.
    bool collect_active() {
        active_.clear();
        active_defs_.clear();
        Eval ev = make_eval();
        auto push = [&](auto&& self, const TermPtr& t) -> bool {
            int v = ev.boolean(t);
            if (v == 1) return true;
            if (v == 0) return false;
            if (t->kind == Kind::Implies) {
                int g = ev.boolean(t->args[0]);
                if (g == 0) return true;
                if (g == 1) return self(self, t->args[1]);
                active_.push_back(t);
                return true;
            }
            if (t->kind == Kind::And) {
                for (const TermPtr& a : t->args)
                    if (!self(self, a)) return false;
                return true;
            }
            // Definitions go to their own list; they are satisfied by
            // construction once resolved, so the check loop skips them.
            if (t->kind == Kind::Eq && t->args[0]->kind == Kind::Var) {
                active_defs_.emplace_back(t->args[0]->var, t->args[1]);
                return true;
            }
            active_.push_back(t);
            return true;
        };
        for (const TermPtr& t : p_.asserts)
            if (!push(push, t)) return false;
        return true;
    }

    static bool collect_vars(const TermPtr& t, std::vector<bool>& seen) {
        bool added = false;
        if (t->kind == Kind::Var) {
            auto idx = static_cast<std::size_t>(t->var);
            added = !seen[idx];
            seen[idx] = true;
            return added;
        }
        for (const TermPtr& a : t->args) added |= collect_vars(a, seen);
        return added;
    }

    // Variables that can influence the score, through the active definitions.
    std::vector<bool> support_closure() {
        std::vector<bool> needed(p_.vars.size(), false);
        if (p_.objective) collect_vars(*p_.objective, needed);
        for (const auto& [t, w] : p_.softs) collect_vars(t, needed);
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = active_defs_.rbegin(); it != active_defs_.rend(); ++it)
                if (needed[static_cast<std::size_t>(it->first)])
                    changed |= collect_vars(it->second, needed);
        }
        return needed;
    }

    // All finite decisions fixed: optimize / check over the free reals.
    void real_phase(std::vector<int>& trail) {
        if (!collect_active()) return;
        std::vector<bool> needed = support_closure();
        std::vector<bool> dyn_defined(p_.vars.size(), false);
        for (const auto& [var, rhs] : active_defs_)
            dyn_defined[static_cast<std::size_t>(var)] = true;

        std::vector<int> live;
        const std::size_t mark = trail.size();
        bool changed = false;
        for (std::size_t i = 0; i < p_.vars.size(); ++i) {
            if (sorts_[i] != Sort::Real || !std::isnan(env_[i]) || dyn_defined[i]) continue;
            const Variable& v = p_.vars[i];
            if (std::isinf(v.lo) || std::isinf(v.hi))
                die("real variable '" + v.name + "' has no finite bounds");
            if ((p_.objective || !p_.softs.empty()) && needed[i]) {
                live.push_back(static_cast<int>(i));
            } else if (!assign(static_cast<int>(i), v.lo, trail, changed)) {
                undo(trail, mark);
                return;
            }
        }

        if (live.empty()) {
            bool feasible = false;
            evaluate_candidate({}, live, trail, feasible);
            undo(trail, mark);
            return;
        }

        std::vector<double> assignment(live.size());
        for (std::size_t i = 0; i < live.size(); ++i) {
            const Variable& v = p_.vars[static_cast<std::size_t>(live[i])];
            assignment[i] = 0.5 * (v.lo + v.hi);
        }
        const int passes = live.size() == 1 ? 1 : 3;
        for (int pass = 0; pass < passes; ++pass) {
            for (std::size_t i = 0; i < live.size(); ++i) {
                auto [arg, val, feasible] = sweep_coordinate(assignment, i, live, trail);
                if (feasible) assignment[i] = arg;
                (void)val;
            }
        }
        undo(trail, mark);
    }

    struct SweepResult {
        double arg;
        double value;
        bool feasible;
    };

    SweepResult sweep_coordinate(std::vector<double> point, std::size_t idx,
                                 const std::vector<int>& free_reals,
                                 std::vector<int>& trail) {
        const Variable& v = p_.vars[static_cast<std::size_t>(free_reals[idx])];
        double lo = v.lo, hi = v.hi;
        double best_arg = point[idx];
        double best_val = -std::numeric_limits<double>::infinity();
        bool any = false;

        auto probe = [&](double x) {
            point[idx] = x;
            bool feasible = false;
            double s = evaluate_candidate(point, free_reals, trail, feasible);
            if (feasible && s > best_val) {
                best_val = s;
                best_arg = x;
                any = true;
            }
        };

        // Candidate roots of comparisons linear (or piecewise-linear) in
        // this variable: exact flip points for predicate thresholds and kink
        // estimates inside min/max chains.
        std::vector<double> roots = comparison_roots(free_reals[idx], point, idx, free_reals, trail);
        for (double root : roots) {
            if (root < lo || root > hi) continue;
            probe(root);
            probe(std::max(lo, root - 1e-9));
            probe(std::min(hi, root + 1e-9));
        }
        for (std::size_t i = 0; i + 1 < roots.size(); ++i)
            probe(0.5 * (roots[i] + roots[i + 1]));
        // Grid with geometric refinement around the best point.
        const int kGrid = 96;
        double wlo = lo, whi = hi;
        for (int level = 0; level < 7; ++level) {
            for (int g = 0; g <= kGrid; ++g)
                probe(wlo + (whi - wlo) * g / kGrid);
            if (!any) break;
            const double w = std::max((whi - wlo) * 2.0 / kGrid, 1e-12);
            wlo = std::max(lo, best_arg - w);
            whi = std::min(hi, best_arg + w);
            if (whi - wlo < 1e-12) break;
        }
        return {best_arg, best_val, any};
    }

    // Candidate flip points of every comparison reachable in the active
    // constraints, estimated by a secant through the pivot's domain ends.
    // Exact for comparisons affine in the pivot (predicate thresholds),
    // approximate inside min/max chains; the grid sweep refines either way.
    std::vector<double> comparison_roots(int pivot, std::vector<double>& point,
                                         std::size_t idx, const std::vector<int>& live,
                                         std::vector<int>& trail) {
        std::vector<double> roots;
        const Variable& pv = p_.vars[static_cast<std::size_t>(pivot)];

        auto snapshot_at = [&](double x, std::vector<double>& out) {
            const std::size_t mark = trail.size();
            bool changed = false;
            for (std::size_t i = 0; i < live.size(); ++i) {
                const double v = i == idx ? x : point[i];
                if (!assign(live[i], v, trail, changed)) {
                    undo(trail, mark);
                    return false;
                }
            }
            if (!propagate(trail)) {
                undo(trail, mark);
                return false;
            }
            out = env_;
            undo(trail, mark);
            return true;
        };
        std::vector<double> env_lo, env_hi;
        if (!snapshot_at(pv.lo, env_lo) || !snapshot_at(pv.hi, env_hi)) return roots;

        Eval elo = make_eval(), ehi = make_eval();
        elo.env = &env_lo;
        ehi.env = &env_hi;
        auto walk = [&](auto&& self, const TermPtr& t) -> void {
            if (t->kind == Kind::Le || t->kind == Kind::Lt) {
                const double f0 = elo.num(t->args[1]) - elo.num(t->args[0]);
                const double f1 = ehi.num(t->args[1]) - ehi.num(t->args[0]);
                if (!std::isnan(f0) && !std::isnan(f1) && f0 != f1) {
                    const double tt = f0 / (f0 - f1);
                    if (tt >= 0.0 && tt <= 1.0)
                        roots.push_back(pv.lo + tt * (pv.hi - pv.lo));
                }
            }
            for (const TermPtr& a : t->args) self(self, a);
        };
        for (const TermPtr& t : active_) walk(walk, t);
        for (const auto& [t, w] : p_.softs) walk(walk, t);
        undo(trail, trail.size());
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        return roots;
    }

    // Propagation restricted to the leaf's active constraints and
    // definitions; the fallback when the single ordered pass stalls.
    bool propagate_active(std::vector<int>& trail) {
        Eval ev = make_eval();
        bool changed = true;
        int rounds = 0;
        while (changed) {
            changed = false;
            if (++rounds > 10000) die("propagation did not converge");
            for (const auto& [var, rhs] : active_defs_) {
                if (!std::isnan(env_[static_cast<std::size_t>(var)])) continue;
                double value;
                if (sorts_[static_cast<std::size_t>(var)] == Sort::Bool) {
                    int b = ev.boolean(rhs);
                    if (b < 0) continue;
                    value = b;
                } else {
                    value = ev.num(rhs);
                    if (std::isnan(value)) continue;
                }
                if (!assign(var, value, trail, changed)) return false;
            }
            for (const TermPtr& t : active_)
                if (propagate_term(t, ev, trail, changed) == 0) return false;
        }
        return true;
    }

    // Assign the live reals, resolve the active definitions (they are
    // collected bottom-up, so one ordered pass settles them; the generic
    // propagation is the fallback), check the active assertions, and return
    // the score (objective value or soft weight).
    double evaluate_candidate(const std::vector<double>& point, const std::vector<int>& live,
                              std::vector<int>& trail, bool& feasible) {
        feasible = false;
        const std::size_t mark = trail.size();
        bool changed = false;
        for (std::size_t i = 0; i < live.size(); ++i) {
            if (!assign(live[i], point[i], trail, changed)) {
                undo(trail, mark);
                return -std::numeric_limits<double>::infinity();
            }
        }
        Eval ev = make_eval();
        bool ordered_ok = true;
        for (const auto& [var, rhs] : active_defs_) {
            double value;
            if (sorts_[static_cast<std::size_t>(var)] == Sort::Bool) {
                int b = ev.boolean(rhs);
                if (b < 0) {
                    ordered_ok = false;
                    break;
                }
                value = b;
            } else {
                value = ev.num(rhs);
                if (std::isnan(value)) {
                    ordered_ok = false;
                    break;
                }
            }
            if (!assign(var, value, trail, changed)) {
                undo(trail, mark);
                return -std::numeric_limits<double>::infinity();
            }
        }
        if (!ordered_ok && !propagate_active(trail)) {
            undo(trail, mark);
            return -std::numeric_limits<double>::infinity();
        }
        for (const TermPtr& t : active_) {
            if (ev.boolean(t) != 1) {
                undo(trail, mark);
                return -std::numeric_limits<double>::infinity();
            }
        }
        double score = 0.0;
        if (p_.objective) {
            score = ev.num(*p_.objective);
            if (std::isnan(score)) {
                undo(trail, mark);
                return -std::numeric_limits<double>::infinity();
            }
        } else if (!p_.softs.empty()) {
            for (const auto& [t, w] : p_.softs)
                if (ev.boolean(t) == 1) score += w;
        }
        feasible = true;
        // Keep the full assignment if this is the global best so far.
        if (!found_ || score > best_score_) {
            best_score_ = score;
            best_env_ = env_;
            found_ = true;
            fill_defaults(best_env_);
        }
        undo(trail, mark);
        return score;
    }

    void fill_defaults(std::vector<double>& env) {
        for (std::size_t i = 0; i < env.size(); ++i) {
            if (!std::isnan(env[i])) continue;
            const Variable& v = p_.vars[i];
            env[i] = v.sort == Sort::Bool ? 0.0 : (std::isinf(v.lo) ? 0.0 : v.lo);
        }
    }
};

// ---- output ------------------------------------------------------------------------

std::string format_value(const Variable& v, double value) {
    if (v.sort == Sort::Bool) return value != 0.0 ? "true" : "false";
    if (v.sort == Sort::Int) {
        long l = static_cast<long>(std::llround(value));
        if (l < 0) return "(- " + std::to_string(-l) + ")";
        return std::to_string(l);
    }
    const bool neg = std::signbit(value) && value != 0.0;
    double av = neg ? -value : value;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, av);
    std::string body(buf, res.ptr);
    if (body.find('e') != std::string::npos || body.find('E') != std::string::npos) {
        char fixed[512];
        std::snprintf(fixed, sizeof fixed, "%.20f", av);
        body = fixed;
        while (body.size() > 1 && body.back() == '0') body.pop_back();
        if (body.back() == '.') body += "0";
    } else if (body.find('.') == std::string::npos) {
        body += ".0";
    }
    return neg ? "(- " + body + ")" : body;
}

}  // namespace

int main(int argc, char** argv) {
    std::string text;
    if (argc > 1) {
        std::ifstream in(argv[1]);
        if (!in) {
            std::cerr << "minismt: cannot open " << argv[1] << "\n";
            return 1;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    }

    Problem p;
    SexpReader reader{text};
    bool checked = false;
    bool sat = false;
    std::unique_ptr<Solver> solver;

    while (!reader.done()) {
        Sexp cmd = reader.read();
        if (cmd.is_atom() || cmd.items.empty()) continue;
        const std::string& head = cmd.items[0].atom;
        if (head == "set-option" || head == "set-logic" || head == "set-info") continue;
        if (head == "declare-const" || head == "declare-fun") {
            const std::string& name = cmd.items[1].atom;
            const Sexp& sort_s = cmd.items.back();
            Sort sort = Sort::Bool;
            if (sort_s.atom == "Int") sort = Sort::Int;
            else if (sort_s.atom == "Real") sort = Sort::Real;
            else if (sort_s.atom != "Bool") die("unsupported sort " + sort_s.atom);
            Variable v;
            v.name = name;
            v.sort = sort;
            p.by_name.emplace(name, static_cast<int>(p.vars.size()));
            p.vars.push_back(std::move(v));
            continue;
        }
        std::vector<std::pair<std::string, TermPtr>> lets;
        if (head == "assert") {
            p.asserts.push_back(build_term(cmd.items[1], p, lets));
            continue;
        }
        if (head == "assert-soft") {
            double weight = 1.0;
            for (std::size_t i = 2; i + 1 < cmd.items.size(); ++i)
                if (cmd.items[i].atom == ":weight") {
                    bool ok = false;
                    weight = parse_number(cmd.items[i + 1].atom, ok);
                    if (!ok) die("bad soft weight");
                }
            p.softs.emplace_back(build_term(cmd.items[1], p, lets), weight);
            continue;
        }
        if (head == "maximize") {
            p.objective = build_term(cmd.items[1], p, lets);
            continue;
        }
        if (head == "check-sat") {
            solver = std::make_unique<Solver>(p);
            sat = solver->solve();
            checked = true;
            std::cout << (sat ? "sat" : "unsat") << "\n";
            continue;
        }
        if (head == "get-objectives") {
            if (!checked || !sat) {
                std::cout << "(objectives)\n";
                continue;
            }
            std::cout << "(objectives\n ("
                      << (p.objective && (*p.objective)->kind == Kind::Var
                              ? p.vars[static_cast<std::size_t>((*p.objective)->var)].name
                              : "objective")
                      << " " << solver->best_score() << ")\n)\n";
            continue;
        }
        if (head == "get-value") {
            if (!checked || !sat) {
                std::cout << "(error \"no model\")\n";
                continue;
            }
            std::cout << "(";
            bool first = true;
            for (const Sexp& q : cmd.items[1].items) {
                auto it = p.by_name.find(q.atom);
                if (it == p.by_name.end()) continue;
                if (!first) std::cout << "\n ";
                first = false;
                const Variable& v = p.vars[static_cast<std::size_t>(it->second)];
                std::cout << "(" << v.name << " "
                          << format_value(v, solver->best_env()[static_cast<std::size_t>(
                                                 it->second)])
                          << ")";
            }
            std::cout << ")\n";
            continue;
        }
        if (head == "exit") break;
        // Unknown commands are ignored.
    }
    return checked ? 0 : (std::cout << "unknown\n", 0);
}
