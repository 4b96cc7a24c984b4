#pragma once

// Internal enumerative backend.
//
// Enumerates syntax-DAG structures of the encoded size directly (labels,
// children, windows), with nodes unreachable from the root pinned to a
// canonical configuration. For every structure it selects the semantic
// constraints whose guards the structure satisfies and evaluates the y
// tables from those constraints; thresholds are optimized exactly per
// predicate with piecewise-linear algebra (coordinate descent with
// multistart when several thresholds are live). The model it returns is a
// complete assignment that satisfies every hard constraint of the encoding.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "uastl/encode/build.hpp"
#include "uastl/encode/ir.hpp"
#include "uastl/piecewise.hpp"

namespace uastl::ir {

class InternalSolver {
public:
    struct Options {
        std::uint64_t structure_cap = 20'000'000;  // refuse larger enumerations
        int coordinate_passes = 24;
        double improve_eps = 1e-12;
    };

    InternalSolver() = default;
    explicit InternalSolver(Options opts) : opts_(opts) {}

    /// Maximize the encoding's objective (or find any structurally valid
    /// model when there is none).
    SolverModel optimize(const Encoding& enc, double timeout_s) const {
        return run(enc, /*weighted=*/false, timeout_s);
    }

    /// Maximize the total weight of satisfied soft constraints.
    SolverModel max_weighted(const Encoding& enc, double timeout_s) const {
        return run(enc, /*weighted=*/true, timeout_s);
    }

private:
    Options opts_;

    // ---- clause index -------------------------------------------------------

    struct Def {
        VarId lhs;
        Term rhs;
    };
    struct Clause {
        std::vector<Def> defs;
    };
    // Guard signature: node, label, left child, right child, window; absent
    // components are kAbsent.
    static constexpr int kAbsent = 0xFF;
    static std::uint64_t guard_key(int i, int lam, int k, int kp, int A, int B) {
        return (std::uint64_t(i) << 40) | (std::uint64_t(lam) << 32) |
               (std::uint64_t(k) << 24) | (std::uint64_t(kp) << 16) |
               (std::uint64_t(A) << 8) | std::uint64_t(B);
    }

    struct ClauseIndex {
        std::unordered_map<std::uint64_t, std::vector<Clause>> guarded;
        std::vector<Def> unguarded;  // e.g. the objective definition
    };

    struct VarLookup {
        // var id -> (i, lam) for x vars; (i, k) for l/r; node for a/b.
        std::vector<int> x_node, x_label, l_node, l_child, r_node, r_child, ab_node;
        std::vector<bool> is_a;
        explicit VarLookup(const Encoding& enc) {
            const std::size_t V = enc.vars.size();
            x_node.assign(V, -1);
            x_label.assign(V, -1);
            l_node.assign(V, -1);
            l_child.assign(V, -1);
            r_node.assign(V, -1);
            r_child.assign(V, -1);
            ab_node.assign(V, -1);
            is_a.assign(V, false);
            for (int i = 1; i <= enc.n; ++i) {
                for (std::size_t lam = 0; lam < enc.num_labels(); ++lam) {
                    x_node[static_cast<std::size_t>(xvar(enc, i, lam))] = i;
                    x_label[static_cast<std::size_t>(xvar(enc, i, lam))] =
                        static_cast<int>(lam);
                }
                if (i >= 2)
                    for (int k = 1; k < i; ++k) {
                        l_node[static_cast<std::size_t>(lvar(enc, i, k))] = i;
                        l_child[static_cast<std::size_t>(lvar(enc, i, k))] = k;
                        r_node[static_cast<std::size_t>(rvar(enc, i, k))] = i;
                        r_child[static_cast<std::size_t>(rvar(enc, i, k))] = k;
                    }
                ab_node[static_cast<std::size_t>(avar(enc, i))] = i;
                is_a[static_cast<std::size_t>(avar(enc, i))] = true;
                ab_node[static_cast<std::size_t>(bvar(enc, i))] = i;
            }
        }
    };

    static ClauseIndex index_clauses(const Encoding& enc, const VarLookup& lut) {
        ClauseIndex idx;
        for (const Term& t : enc.hard) {
            if (t->kind == Kind::Eq && t->args[0]->kind == Kind::Var) {
                idx.unguarded.push_back({t->args[0]->var, t->args[1]});
                continue;
            }
            if (t->kind != Kind::Implies) continue;
            const Term& guard = t->args[0];
            std::vector<Term> lits =
                guard->kind == Kind::And ? guard->args : std::vector<Term>{guard};
            int node = -1, lam = -1, k = kAbsent, kp = kAbsent, A = kAbsent, B = kAbsent;
            bool recognized = true;
            for (const Term& lit : lits) {
                if (lit->kind == Kind::Var) {
                    const auto v = static_cast<std::size_t>(lit->var);
                    if (lut.x_node[v] >= 0) {
                        node = lut.x_node[v];
                        lam = lut.x_label[v];
                    } else if (lut.l_node[v] >= 0) {
                        k = lut.l_child[v];
                    } else if (lut.r_node[v] >= 0) {
                        kp = lut.r_child[v];
                    } else {
                        recognized = false;
                    }
                } else if (lit->kind == Kind::Eq && lit->args[0]->kind == Kind::Var &&
                           lit->args[1]->kind == Kind::NumConst) {
                    const auto v = static_cast<std::size_t>(lit->args[0]->var);
                    if (lut.ab_node[v] >= 0) {
                        (lut.is_a[v] ? A : B) = static_cast<int>(lit->args[1]->num);
                    } else {
                        recognized = false;
                    }
                } else {
                    recognized = false;
                }
            }
            if (!recognized || node < 0) continue;
            const Term& body = t->args[1];
            std::vector<Term> parts =
                body->kind == Kind::And ? body->args : std::vector<Term>{body};
            Clause cl;
            for (const Term& p : parts) {
                if ((p->kind == Kind::Eq || p->kind == Kind::Iff) &&
                    p->args[0]->kind == Kind::Var) {
                    // Window pinning assigns integers to a_i/b_i; the
                    // enumerator sets those directly, skip them here.
                    if (lut.ab_node[static_cast<std::size_t>(p->args[0]->var)] >= 0) continue;
                    cl.defs.push_back({p->args[0]->var, p->args[1]});
                } else if (p->kind == Kind::Var) {
                    cl.defs.push_back({p->var, tbool(true)});
                } else if (p->kind == Kind::Not && p->args[0]->kind == Kind::Var) {
                    cl.defs.push_back({p->args[0]->var, tbool(false)});
                }
            }
            idx.guarded[guard_key(node, lam, k, kp, A, B)].push_back(std::move(cl));
        }
        return idx;
    }

    // ---- structures ----------------------------------------------------------

    struct NodeConfig {
        int label = 0;  // index into the label universe
        int left = 1, right = 1;
        int wa = 0, wb = 1;
    };
    struct Structure {
        std::vector<NodeConfig> node;  // index 0 unused; 1-based
        std::vector<bool> reachable;
    };

    // ---- evaluation -----------------------------------------------------------

    struct EvalCtx {
        const Encoding* enc;
        std::vector<double> env;  // numeric values by VarId (bools as 0/1)

        double num(const Term& t) const {
            switch (t->kind) {
                case Kind::NumConst: return t->num;
                case Kind::Var: return env[static_cast<std::size_t>(t->var)];
                case Kind::Neg: return -num(t->args[0]);
                case Kind::Sub: return num(t->args[0]) - num(t->args[1]);
                case Kind::Add: {
                    double s = 0;
                    for (const Term& a : t->args) s += num(a);
                    return s;
                }
                case Kind::Min: {
                    double m = num(t->args[0]);
                    for (std::size_t i = 1; i < t->args.size(); ++i)
                        m = std::min(m, num(t->args[i]));
                    return m;
                }
                case Kind::Max: {
                    double m = num(t->args[0]);
                    for (std::size_t i = 1; i < t->args.size(); ++i)
                        m = std::max(m, num(t->args[i]));
                    return m;
                }
                default: throw std::logic_error("EvalCtx::num: non-numeric term");
            }
        }

        bool boolean(const Term& t) const {
            switch (t->kind) {
                case Kind::BoolConst: return t->bval;
                case Kind::Var: return env[static_cast<std::size_t>(t->var)] != 0.0;
                case Kind::Not: return !boolean(t->args[0]);
                case Kind::And:
                    for (const Term& a : t->args)
                        if (!boolean(a)) return false;
                    return true;
                case Kind::Or:
                    for (const Term& a : t->args)
                        if (boolean(a)) return true;
                    return false;
                case Kind::Implies: return !boolean(t->args[0]) || boolean(t->args[1]);
                case Kind::Iff: {
                    const Term& a = t->args[0];
                    const Term& b = t->args[1];
                    const bool numeric = a->kind == Kind::NumConst || a->kind == Kind::Sub ||
                                         a->kind == Kind::Add || a->kind == Kind::Min ||
                                         a->kind == Kind::Max || a->kind == Kind::Neg;
                    if (numeric) return num(a) == num(b);
                    return boolean(a) == boolean(b);
                }
                case Kind::Eq: return num(t->args[0]) == num(t->args[1]);
                case Kind::Le: return num(t->args[0]) <= num(t->args[1]);
                case Kind::Lt: return num(t->args[0]) < num(t->args[1]);
                default: throw std::logic_error("EvalCtx::boolean: non-boolean term");
            }
        }
    };

    // Piecewise-linear evaluation in a single live threshold variable; every
    // other variable reads from the numeric environment.
    struct PlCtx {
        const EvalCtx* base;
        VarId pivot;
        double lo, hi;
        std::unordered_map<const TermNode*, Piecewise> memo;
        std::vector<std::optional<Piecewise>> var_pl;  // symbolic y values

        Piecewise eval(const Term& t) {
            switch (t->kind) {
                case Kind::NumConst: return Piecewise::constant(lo, hi, t->num);
                case Kind::Var: {
                    if (t->var == pivot) return Piecewise::identity(lo, hi);
                    const auto idx = static_cast<std::size_t>(t->var);
                    if (idx < var_pl.size() && var_pl[idx]) return *var_pl[idx];
                    return Piecewise::constant(lo, hi, base->env[idx]);
                }
                case Kind::Neg: return eval(t->args[0]).negate();
                case Kind::Sub: return pw_add(eval(t->args[0]), eval(t->args[1]).negate());
                case Kind::Add: {
                    Piecewise acc = eval(t->args[0]);
                    for (std::size_t i = 1; i < t->args.size(); ++i)
                        acc = pw_add(acc, eval(t->args[i]));
                    return acc;
                }
                case Kind::Min: {
                    Piecewise acc = eval(t->args[0]);
                    for (std::size_t i = 1; i < t->args.size(); ++i)
                        acc = pw_min(acc, eval(t->args[i]));
                    return acc;
                }
                case Kind::Max: {
                    Piecewise acc = eval(t->args[0]);
                    for (std::size_t i = 1; i < t->args.size(); ++i)
                        acc = pw_max(acc, eval(t->args[i]));
                    return acc;
                }
                default: throw std::logic_error("PlCtx::eval: non-numeric term");
            }
        }
    };

    // ---- search ----------------------------------------------------------------

    struct SearchState {
        const Encoding* enc;
        const ClauseIndex* idx;
        bool weighted = false;
        std::chrono::steady_clock::time_point deadline;
        bool timed_out = false;
        std::uint64_t visited = 0;

        double best_value = -std::numeric_limits<double>::infinity();
        bool have_best = false;
        Structure best_structure;
        std::vector<double> best_thresholds;  // live thresholds by var id in env form
        std::vector<double> best_env;
    };

    SolverModel run(const Encoding& enc, bool weighted, double timeout_s) const {
        SolverModel out;
        if (enc.n < 1) {
            out.status = SolveStatus::Error;
            out.message = "empty encoding";
            return out;
        }
        VarLookup lut(enc);
        ClauseIndex idx = index_clauses(enc, lut);

        SearchState st;
        st.enc = &enc;
        st.idx = &idx;
        st.weighted = weighted;
        st.deadline = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(timeout_s));

        Structure s;
        s.node.resize(static_cast<std::size_t>(enc.n) + 1);
        s.reachable.assign(static_cast<std::size_t>(enc.n) + 1, false);
        s.reachable[static_cast<std::size_t>(enc.n)] = true;
        enumerate(st, s, enc.n);

        if (!st.have_best) {
            out.status = st.timed_out ? SolveStatus::TimedOut : SolveStatus::Error;
            out.message = st.timed_out ? "timeout before first structure" : "no structure found";
            return out;
        }
        out.values = st.best_env;
        out.objective = st.best_value;
        out.status = st.timed_out ? SolveStatus::TimedOut
                     : (enc.objective || weighted) ? SolveStatus::Optimal
                                                   : SolveStatus::Sat;
        verify_model(enc, out);
        return out;
    }

    // Enumerate configurations of nodes i, i-1, ..., 1; nodes not (yet)
    // referenced by a larger node get the canonical dead configuration.
    void enumerate(SearchState& st, Structure& s, int i) const {
        if (st.timed_out) return;
        if (i == 0) {
            evaluate_structure(st, s);
            return;
        }
        auto& cfg = s.node[static_cast<std::size_t>(i)];
        const Encoding& enc = *st.enc;
        if (!s.reachable[static_cast<std::size_t>(i)]) {
            cfg = NodeConfig{0, 1, 1, 0, enc.horizon};  // canonical, label = first atom
            enumerate(st, s, i - 1);
            return;
        }
        const int H = enc.horizon;
        const std::size_t labels = enc.num_labels();
        for (std::size_t lam = 0; lam < labels; ++lam) {
            if (i == 1 && !enc.label_is_atom(lam)) continue;
            if (i == 1) {
                cfg = NodeConfig{static_cast<int>(lam), 1, 1, 0, H};
                enumerate(st, s, 0);
                continue;
            }
            const bool atom_or_top = enc.label_is_atom(lam) || enc.label_op(lam) == OpSym::True;
            if (atom_or_top) {
                cfg = NodeConfig{static_cast<int>(lam), 1, 1, 0, H};
                enumerate(st, s, i - 1);
                continue;
            }
            const OpSym op = enc.label_op(lam);
            const bool temporal = op_sym_temporal(op);
            const bool binary = op_sym_binary(op);
            for (int k = 1; k < i; ++k) {
                const bool k_was = s.reachable[static_cast<std::size_t>(k)];
                s.reachable[static_cast<std::size_t>(k)] = true;
                const int kp_hi = binary ? i - 1 : 1;
                for (int kp = 1; kp <= kp_hi; ++kp) {
                    bool kp_was = true;
                    if (binary) {
                        kp_was = s.reachable[static_cast<std::size_t>(kp)];
                        s.reachable[static_cast<std::size_t>(kp)] = true;
                    }
                    if (temporal) {
                        for (int A = 0; A < H && !st.timed_out; ++A)
                            for (int B = A + 1; B <= H; ++B) {
                                cfg = NodeConfig{static_cast<int>(lam), k, binary ? kp : 1, A, B};
                                enumerate(st, s, i - 1);
                            }
                    } else {
                        cfg = NodeConfig{static_cast<int>(lam), k, binary ? kp : 1, 0, H};
                        enumerate(st, s, i - 1);
                    }
                    if (binary) s.reachable[static_cast<std::size_t>(kp)] = kp_was;
                }
                s.reachable[static_cast<std::size_t>(k)] = k_was;
            }
        }
    }

    // Collect the active clauses of a structure, node-major so definitions
    // are evaluated bottom-up.
    std::vector<const Clause*> active_clauses(const SearchState& st, const Structure& s) const {
        const Encoding& enc = *st.enc;
        std::vector<const Clause*> act;
        for (int i = 1; i <= enc.n; ++i) {
            const NodeConfig& cfg = s.node[static_cast<std::size_t>(i)];
            const bool is_atom = enc.label_is_atom(static_cast<std::size_t>(cfg.label));
            const OpSym op =
                is_atom ? OpSym::True : enc.label_op(static_cast<std::size_t>(cfg.label));
            std::uint64_t key;
            if (is_atom || op == OpSym::True) {
                key = guard_key(i, cfg.label, kAbsent, kAbsent, kAbsent, kAbsent);
            } else if (op == OpSym::Not) {
                key = guard_key(i, cfg.label, cfg.left, kAbsent, kAbsent, kAbsent);
            } else if (op == OpSym::Eventually || op == OpSym::Always) {
                key = guard_key(i, cfg.label, cfg.left, kAbsent, cfg.wa, cfg.wb);
            } else if (op == OpSym::Until) {
                key = guard_key(i, cfg.label, cfg.left, cfg.right, cfg.wa, cfg.wb);
            } else {
                key = guard_key(i, cfg.label, cfg.left, cfg.right, kAbsent, kAbsent);
            }
            auto it = st.idx->guarded.find(key);
            if (it != st.idx->guarded.end())
                for (const Clause& c : it->second) act.push_back(&c);
        }
        return act;
    }

    // Live thresholds: thresholds of reachable atom-labeled nodes.
    std::vector<VarId> live_thresholds(const SearchState& st, const Structure& s) const {
        const Encoding& enc = *st.enc;
        std::vector<VarId> live;
        for (int i = 1; i <= enc.n; ++i) {
            if (!s.reachable[static_cast<std::size_t>(i)]) continue;
            const NodeConfig& cfg = s.node[static_cast<std::size_t>(i)];
            if (enc.label_is_atom(static_cast<std::size_t>(cfg.label)))
                live.push_back(cvar(enc, i, static_cast<std::size_t>(cfg.label)));
        }
        return live;
    }

    void set_structure_env(const SearchState& st, const Structure& s,
                           std::vector<double>& env) const {
        const Encoding& enc = *st.enc;
        env.assign(enc.vars.size(), 0.0);
        for (int i = 1; i <= enc.n; ++i) {
            const NodeConfig& cfg = s.node[static_cast<std::size_t>(i)];
            env[static_cast<std::size_t>(xvar(enc, i, static_cast<std::size_t>(cfg.label)))] =
                1.0;
            if (i >= 2) {
                env[static_cast<std::size_t>(lvar(enc, i, cfg.left))] = 1.0;
                env[static_cast<std::size_t>(rvar(enc, i, cfg.right))] = 1.0;
            }
            env[static_cast<std::size_t>(avar(enc, i))] = cfg.wa;
            env[static_cast<std::size_t>(bvar(enc, i))] = cfg.wb;
            for (int q = 0; q < enc.num_atoms; ++q)
                env[static_cast<std::size_t>(cvar(enc, i, static_cast<std::size_t>(q)))] =
                    enc.vars[static_cast<std::size_t>(
                                 cvar(enc, i, static_cast<std::size_t>(q)))]
                        .lo;
        }
    }

    // Numeric evaluation of all active definitions plus the unguarded ones.
    void eval_defs(const SearchState& st, const std::vector<const Clause*>& act,
                   EvalCtx& ctx) const {
        for (const Clause* c : act)
            for (const Def& d : c->defs) {
                const Term& rhs = d.rhs;
                const Sort sort = st.enc->vars[static_cast<std::size_t>(d.lhs)].sort;
                ctx.env[static_cast<std::size_t>(d.lhs)] =
                    sort == Sort::Bool ? (ctx.boolean(rhs) ? 1.0 : 0.0) : ctx.num(rhs);
            }
        for (const Def& d : st.idx->unguarded)
            ctx.env[static_cast<std::size_t>(d.lhs)] = ctx.num(d.rhs);
    }

    double objective_value(const SearchState& st, const EvalCtx& ctx) const {
        const Encoding& enc = *st.enc;
        if (st.weighted) {
            double total = 0.0;
            for (const auto& [t, w] : enc.soft)
                if (ctx.boolean(t)) total += w;
            return total;
        }
        if (enc.objective) return ctx.num(*enc.objective);
        return 0.0;
    }

    // Exact 1-D optimization of the objective in `pivot` with all other
    // variables fixed; returns the best argument.
    double optimize_pivot(const SearchState& st, const std::vector<const Clause*>& act,
                          EvalCtx& ctx, VarId pivot) const {
        const Encoding& enc = *st.enc;
        const VarInfo& info = enc.vars[static_cast<std::size_t>(pivot)];
        if (st.weighted) return sweep_pivot(st, act, ctx, pivot);

        PlCtx pl{&ctx, pivot, info.lo, info.hi, {}, {}};
        pl.var_pl.resize(enc.vars.size());
        for (const Clause* c : act)
            for (const Def& d : c->defs) {
                if (enc.vars[static_cast<std::size_t>(d.lhs)].sort == Sort::Bool) continue;
                pl.var_pl[static_cast<std::size_t>(d.lhs)] = pl.eval(d.rhs);
            }
        Piecewise obj = [&] {
            for (const Def& d : st.idx->unguarded)
                if (enc.objective_var >= 0 && d.lhs == enc.objective_var) return pl.eval(d.rhs);
            return pl.eval(*enc.objective);
        }();
        const double arg = obj.maximize().arg;
        if (enc.threshold_step <= 0.0) return snap_arg(arg, info, 0.0);
        // Gridded thresholds: compare the neighbors of the continuous optimum.
        double best_arg = snap_arg(arg, info, enc.threshold_step);
        double best = obj.eval(best_arg);
        for (double cand : {best_arg - enc.threshold_step, best_arg + enc.threshold_step}) {
            if (cand < info.lo || cand > info.hi) continue;
            if (obj.eval(cand) > best) {
                best = obj.eval(cand);
                best_arg = cand;
            }
        }
        return best_arg;
    }

    // Candidate sweep for the Boolean (weighted) mode: the satisfied count
    // changes only where the pivot crosses a comparison constant.
    double sweep_pivot(const SearchState& st, const std::vector<const Clause*>& act,
                       EvalCtx& ctx, VarId pivot) const {
        const Encoding& enc = *st.enc;
        const VarInfo& info = enc.vars[static_cast<std::size_t>(pivot)];
        std::vector<double> consts;
        for (const Clause* c : act)
            for (const Def& d : c->defs) collect_pivot_consts(d.rhs, pivot, consts);
        std::sort(consts.begin(), consts.end());
        consts.erase(std::unique(consts.begin(), consts.end()), consts.end());
        std::vector<double> cands;
        cands.push_back(info.lo);
        cands.push_back(info.hi);
        for (std::size_t i = 0; i < consts.size(); ++i) {
            if (i + 1 < consts.size()) cands.push_back(0.5 * (consts[i] + consts[i + 1]));
            cands.push_back(std::max(info.lo, consts[i] - 0.5));
            cands.push_back(std::min(info.hi, consts[i] + 0.5));
        }
        double best_arg = ctx.env[static_cast<std::size_t>(pivot)];
        double best = -std::numeric_limits<double>::infinity();
        for (double cand : cands) {
            if (cand < info.lo || cand > info.hi) continue;
            const double c = snap_arg(cand, info, enc.threshold_step);
            ctx.env[static_cast<std::size_t>(pivot)] = c;
            eval_defs(st, act, ctx);
            const double v = objective_value(st, ctx);
            if (v > best) {
                best = v;
                best_arg = c;
            }
        }
        return best_arg;
    }

    static void collect_pivot_consts(const Term& t, VarId pivot, std::vector<double>& out) {
        // Comparisons in point-mode atoms look like 0 < v - c or 0 < c - v.
        if (t->kind == Kind::Lt || t->kind == Kind::Le) {
            const Term& rhs = t->args[1];
            if (rhs->kind == Kind::Sub && rhs->args[0]->kind == Kind::NumConst &&
                rhs->args[1]->kind == Kind::Var && rhs->args[1]->var == pivot)
                out.push_back(rhs->args[0]->num);
            if (rhs->kind == Kind::Sub && rhs->args[1]->kind == Kind::NumConst &&
                rhs->args[0]->kind == Kind::Var && rhs->args[0]->var == pivot)
                out.push_back(rhs->args[1]->num);
        }
        for (const Term& a : t->args) collect_pivot_consts(a, pivot, out);
    }

    double snap_arg(double v, const VarInfo& info, double step) const {
        if (step > 0.0) v = info.lo + std::round((v - info.lo) / step) * step;
        return std::min(std::max(v, info.lo), info.hi);
    }

    void evaluate_structure(SearchState& st, const Structure& s) const {
        ++st.visited;
        if (st.visited > opts_.structure_cap) {
            st.timed_out = true;
            return;
        }
        if ((st.visited & 0x3F) == 0 && std::chrono::steady_clock::now() >= st.deadline) {
            st.timed_out = true;
            return;
        }
        const Encoding& enc = *st.enc;
        std::vector<const Clause*> act = active_clauses(st, s);
        EvalCtx ctx{&enc, {}};
        set_structure_env(st, s, ctx.env);

        std::vector<VarId> live = live_thresholds(st, s);
        const bool has_objective = enc.objective.has_value() || st.weighted;

        if (!has_objective || live.empty()) {
            eval_defs(st, act, ctx);
            consider(st, s, ctx, objective_value(st, ctx));
            return;
        }

        // Start thresholds at the domain midpoint, optimize coordinatewise.
        auto run_from = [&](double frac) {
            for (VarId c : live) {
                const VarInfo& info = enc.vars[static_cast<std::size_t>(c)];
                ctx.env[static_cast<std::size_t>(c)] = info.lo + frac * (info.hi - info.lo);
            }
            double last = -std::numeric_limits<double>::infinity();
            for (int pass = 0; pass < opts_.coordinate_passes; ++pass) {
                for (VarId c : live) {
                    const double arg = optimize_pivot(st, act, ctx, c);
                    ctx.env[static_cast<std::size_t>(c)] = arg;
                }
                eval_defs(st, act, ctx);
                const double v = objective_value(st, ctx);
                if (v <= last + opts_.improve_eps) {
                    last = std::max(last, v);
                    break;
                }
                last = v;
                if (live.size() == 1) break;  // one pass is exact
            }
            eval_defs(st, act, ctx);
            consider(st, s, ctx, objective_value(st, ctx));
        };
        run_from(0.5);
        if (live.size() > 1) {
            run_from(0.25);
            run_from(0.75);
        }
    }

    void consider(SearchState& st, const Structure& s, EvalCtx& ctx, double value) const {
        if (st.have_best && value <= st.best_value) return;
        st.best_value = value;
        st.have_best = true;
        st.best_structure = s;
        st.best_env = ctx.env;
    }

    // The returned model must satisfy every hard constraint; evaluate them
    // all as a final self-check.
    static void verify_model(const Encoding& enc, SolverModel& m) {
        EvalCtx ctx{&enc, m.values};
        for (const Term& t : enc.hard) {
            if (!ctx.boolean(t)) {
                m.status = SolveStatus::Error;
                m.message = "internal solver produced a model violating a hard constraint";
                return;
            }
        }
        for (const VarInfo& v : enc.vars) {
            if (!v.bounded) continue;
            const double val = m.values[static_cast<std::size_t>(&v - enc.vars.data())];
            if (val < v.lo || val > v.hi) {
                m.status = SolveStatus::Error;
                m.message = "internal solver produced out-of-bounds value";
                return;
            }
        }
    }
};

}  // namespace uastl::ir
