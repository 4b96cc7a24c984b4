#pragma once

// Lowering of the syntax-DAG constraint system into the IR.
//
// Variables follow the propositional encoding of the DAG: x_{i,lambda}
// labels node i, l_{i,k}/r_{i,k} pick its children among nodes with smaller
// identifiers, node 1 is always an atomic predicate, node n is the root,
// and a_i/b_i carry the temporal window. Semantic tables track, per encoded
// trajectory, either the worst-/best-case robustness of each node at each
// position (interval mode) or the strong/weak Boolean valuation (point
// mode). min/max stay native IR nodes; serialization expands them.
//
// Temporal clauses are expanded per concrete admissible (a, b) pair behind
// implication guards, which keeps everything in linear arithmetic.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "uastl/core.hpp"
#include "uastl/encode/ir.hpp"
#include "uastl/formula.hpp"

namespace uastl::ir {

// ---- threshold domains ------------------------------------------------------

namespace detail {

inline void widen(Interval& acc, double v, bool& first) {
    if (first) {
        acc = Interval(v, v);
        first = false;
    } else {
        acc = Interval(std::min(acc.lo, v), std::max(acc.hi, v));
    }
}

inline std::pair<double, double> dot_range(const std::vector<double>& w,
                                           const std::vector<Interval>& box) {
    double lo = 0.0, hi = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] > 0.0) {
            lo += w[k] * box[k].lo;
            hi += w[k] * box[k].hi;
        } else if (w[k] < 0.0) {
            lo += w[k] * box[k].hi;
            hi += w[k] * box[k].lo;
        }
    }
    return {lo, hi};
}

}  // namespace detail

/// Default threshold domain per grammar atom: [min - 1, max + 1] of the
/// atom's linear form over every box endpoint in the dataset. The grammar's
/// own domain, when set, wins.
inline std::vector<Interval> threshold_domains(const PredicateGrammar& grammar,
                                               const LabeledDataset& data) {
    std::vector<Interval> doms;
    doms.reserve(grammar.size());
    for (std::size_t q = 0; q < grammar.size(); ++q) {
        if (q < grammar.threshold_domain.size()) {
            doms.push_back(grammar.threshold_domain[q]);
            continue;
        }
        Interval acc;
        bool first = true;
        for (const auto& [it, l] : data.entries())
            for (std::size_t j = 0; j < it.length(); ++j) {
                auto [lo, hi] = detail::dot_range(grammar.atoms[q].coeffs, it.at(j));
                detail::widen(acc, lo, first);
                detail::widen(acc, hi, first);
            }
        doms.emplace_back(acc.lo - 1.0, acc.hi + 1.0);
    }
    return doms;
}

inline std::vector<Interval> threshold_domains(const PredicateGrammar& grammar,
                                               const PointDataset& data) {
    std::vector<Interval> doms;
    doms.reserve(grammar.size());
    for (std::size_t q = 0; q < grammar.size(); ++q) {
        if (q < grammar.threshold_domain.size()) {
            doms.push_back(grammar.threshold_domain[q]);
            continue;
        }
        Interval acc;
        bool first = true;
        for (const auto& [t, l] : data.entries())
            for (std::size_t j = 0; j < t.length(); ++j) {
                double dot = 0.0;
                const auto& w = grammar.atoms[q].coeffs;
                for (std::size_t k = 0; k < w.size(); ++k) dot += w[k] * t.at(j)[k];
                detail::widen(acc, dot, first);
            }
        doms.emplace_back(acc.lo - 1.0, acc.hi + 1.0);
    }
    return doms;
}

// ---- encoding initialization -----------------------------------------------

/// Create the structural variables of a size-n DAG over the grammar, plus
/// per-node threshold variables bounded by `domains`.
inline Encoding init_encoding(int n, const PredicateGrammar& grammar, int horizon,
                              const std::vector<Interval>& domains) {
    if (n < 1) throw std::invalid_argument("init_encoding: n must be positive");
    if (horizon < 1) throw std::invalid_argument("init_encoding: horizon must be positive");
    if (domains.size() != grammar.size())
        throw std::invalid_argument("init_encoding: one threshold domain per atom required");

    Encoding enc;
    enc.n = n;
    enc.horizon = horizon;
    enc.num_atoms = static_cast<int>(grammar.size());
    enc.threshold_step = grammar.threshold_step;

    // A finite stand-in for infinite robustness, strictly dominating every
    // finite value the semantic constraints can produce.
    double bound = 1.0;
    for (std::size_t q = 0; q < grammar.size(); ++q)
        bound = std::max(bound, std::max(std::abs(domains[q].lo), std::abs(domains[q].hi)));
    enc.inf_value = 4.0 * std::ceil(bound) + 1024.0;

    const std::size_t labels = enc.num_labels();
    enc.x.resize(static_cast<std::size_t>(n));
    enc.l.resize(static_cast<std::size_t>(n));
    enc.r.resize(static_cast<std::size_t>(n));
    enc.a.resize(static_cast<std::size_t>(n));
    enc.b.resize(static_cast<std::size_t>(n));
    enc.c.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        auto& xi = enc.x[static_cast<std::size_t>(i - 1)];
        for (std::size_t lam = 0; lam < labels; ++lam) {
            std::string suffix = enc.label_is_atom(lam)
                                     ? "p" + std::to_string(lam + 1)
                                     : op_sym_name(enc.label_op(lam));
            xi.push_back(enc.add_var("x" + std::to_string(i) + "_" + suffix, Sort::Bool));
        }
        if (i >= 2) {
            auto& li = enc.l[static_cast<std::size_t>(i - 1)];
            auto& ri = enc.r[static_cast<std::size_t>(i - 1)];
            for (int k = 1; k < i; ++k) {
                li.push_back(enc.add_var(
                    "l" + std::to_string(i) + "_" + std::to_string(k), Sort::Bool));
            }
            for (int k = 1; k < i; ++k) {
                ri.push_back(enc.add_var(
                    "r" + std::to_string(i) + "_" + std::to_string(k), Sort::Bool));
            }
        }
        enc.a[static_cast<std::size_t>(i - 1)] =
            enc.add_bounded_var("a" + std::to_string(i), Sort::Int, 0, horizon);
        enc.b[static_cast<std::size_t>(i - 1)] =
            enc.add_bounded_var("b" + std::to_string(i), Sort::Int, 0, horizon);
        auto& ci = enc.c[static_cast<std::size_t>(i - 1)];
        for (std::size_t q = 0; q < grammar.size(); ++q)
            ci.push_back(enc.add_bounded_var(
                "c" + std::to_string(i) + "_p" + std::to_string(q + 1), Sort::Real,
                domains[q].lo, domains[q].hi));
    }
    return enc;
}

// Table accessors, 1-based node identifiers.
inline VarId xvar(const Encoding& e, int i, std::size_t lam) {
    return e.x[static_cast<std::size_t>(i - 1)][lam];
}
inline VarId lvar(const Encoding& e, int i, int k) {
    return e.l[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)];
}
inline VarId rvar(const Encoding& e, int i, int k) {
    return e.r[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)];
}
inline VarId avar(const Encoding& e, int i) { return e.a[static_cast<std::size_t>(i - 1)]; }
inline VarId bvar(const Encoding& e, int i) { return e.b[static_cast<std::size_t>(i - 1)]; }
inline VarId cvar(const Encoding& e, int i, std::size_t q) {
    return e.c[static_cast<std::size_t>(i - 1)][q];
}

// ---- structural constraints ------------------------------------------------

/// Label uniqueness, unique left/right children, node 1 atomic, and the
/// window bounds 0 <= a_i < b_i <= horizon. Windows of nodes whose label is
/// not temporal are pinned to (0, horizon) so models stay canonical.
inline void build_structural(Encoding& enc) {
    const std::size_t labels = enc.num_labels();
    for (int i = 1; i <= enc.n; ++i) {
        // Each node carries exactly one label.
        std::vector<Term> any;
        for (std::size_t lam = 0; lam < labels; ++lam) any.push_back(tvar(xvar(enc, i, lam)));
        enc.hard.push_back(tor(std::move(any)));
        for (std::size_t lam = 0; lam < labels; ++lam)
            for (std::size_t mu = lam + 1; mu < labels; ++mu)
                enc.hard.push_back(tor({tnot(tvar(xvar(enc, i, lam))),
                                        tnot(tvar(xvar(enc, i, mu)))}));
        if (i >= 2) {
            // Exactly one left and one right child among smaller identifiers.
            for (auto table : {&Encoding::l, &Encoding::r}) {
                const auto& row = (enc.*table)[static_cast<std::size_t>(i - 1)];
                std::vector<Term> one;
                for (VarId v : row) one.push_back(tvar(v));
                enc.hard.push_back(tor(std::move(one)));
                for (std::size_t k = 0; k < row.size(); ++k)
                    for (std::size_t kp = k + 1; kp < row.size(); ++kp)
                        enc.hard.push_back(tor({tnot(tvar(row[k])), tnot(tvar(row[kp]))}));
            }
        }
        // Window bounds; the 0 <= a_i and b_i <= horizon parts are also var
        // bounds, the strict ordering needs a constraint.
        enc.hard.push_back(tle(tint(0), tvar(avar(enc, i))));
        enc.hard.push_back(tlt(tvar(avar(enc, i)), tvar(bvar(enc, i))));
        enc.hard.push_back(tle(tvar(bvar(enc, i)), tint(enc.horizon)));
        for (std::size_t lam = 0; lam < labels; ++lam) {
            if (enc.label_is_atom(lam) || !op_sym_temporal(enc.label_op(lam))) {
                enc.hard.push_back(timplies(
                    tvar(xvar(enc, i, lam)),
                    tand({teq(tvar(avar(enc, i)), tint(0)),
                          teq(tvar(bvar(enc, i)), tint(enc.horizon))})));
            }
        }
    }
    // Node 1 is labeled with an atomic predicate.
    std::vector<Term> atom1;
    for (int q = 0; q < enc.num_atoms; ++q)
        atom1.push_back(tvar(xvar(enc, 1, static_cast<std::size_t>(q))));
    enc.hard.push_back(tor(std::move(atom1)));
}

// ---- interval semantics ------------------------------------------------------

namespace detail {

// Worst/best-case value of atom q on a box, as a term in the threshold var.
inline Term atom_extremum_term(const PredicateGrammar& g, std::size_t q,
                               const std::vector<Interval>& box, bool best, VarId c) {
    auto [lo, hi] = dot_range(g.atoms[q].coeffs, box);
    if (g.atoms[q].sense == Sense::Gt)
        return tsub(treal(best ? hi : lo), tvar(c));
    return tsub(tvar(c), treal(best ? lo : hi));
}

// max over jp in [j+A, j+B) clipped to the horizon of pick(jp); empty gives
// the fallback constant.
template <typename Pick>
inline Term window_fold(bool is_max, int j, int A, int B, int horizon, double fallback,
                        Pick&& pick) {
    std::vector<Term> parts;
    const int hi = std::min(j + B, horizon);
    for (int jp = j + A; jp < hi; ++jp) parts.push_back(pick(jp));
    if (parts.empty()) return treal(fallback);
    return is_max ? tmax(std::move(parts)) : tmin(std::move(parts));
}

}  // namespace detail

/// Semantic constraints tying ylo/yhi of every node and position to the
/// interval-robustness recursion on one interval trajectory.
inline void build_semantic_interval(Encoding& enc, const PredicateGrammar& grammar,
                                    const IntervalTrajectory& it) {
    if (static_cast<int>(it.length()) != enc.horizon)
        throw std::invalid_argument("build_semantic_interval: horizon mismatch");
    enc.mode = SemanticsMode::Interval;
    const int e = enc.num_entries++;
    const int H = enc.horizon;
    const double INF = enc.inf_value;

    auto& ylo = enc.ylo.emplace_back();
    auto& yhi = enc.yhi.emplace_back();
    ylo.resize(static_cast<std::size_t>(enc.n));
    yhi.resize(static_cast<std::size_t>(enc.n));
    for (int i = 1; i <= enc.n; ++i)
        for (int j = 0; j < H; ++j) {
            const std::string base = std::to_string(e) + "_" + std::to_string(i) + "_" +
                                     std::to_string(j);
            ylo[static_cast<std::size_t>(i - 1)].push_back(
                enc.add_var("ylo" + base, Sort::Real));
            yhi[static_cast<std::size_t>(i - 1)].push_back(
                enc.add_var("yhi" + base, Sort::Real));
        }

    auto YLO = [&](int i, int j) {
        return tvar(ylo[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)]);
    };
    auto YHI = [&](int i, int j) {
        return tvar(yhi[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)]);
    };

    for (int i = 1; i <= enc.n; ++i) {
        // Atomic predicates (Eq. for every node, including node 1).
        for (int q = 0; q < enc.num_atoms; ++q) {
            std::vector<Term> body;
            for (int j = 0; j < H; ++j) {
                body.push_back(teq(YLO(i, j), detail::atom_extremum_term(
                                                  grammar, static_cast<std::size_t>(q),
                                                  it.at(static_cast<std::size_t>(j)), false,
                                                  cvar(enc, i, static_cast<std::size_t>(q)))));
                body.push_back(teq(YHI(i, j), detail::atom_extremum_term(
                                                  grammar, static_cast<std::size_t>(q),
                                                  it.at(static_cast<std::size_t>(j)), true,
                                                  cvar(enc, i, static_cast<std::size_t>(q)))));
            }
            enc.hard.push_back(
                timplies(tvar(xvar(enc, i, static_cast<std::size_t>(q))), tand(std::move(body))));
        }
        // Boolean constant.
        {
            std::vector<Term> body;
            for (int j = 0; j < H; ++j) {
                body.push_back(teq(YLO(i, j), treal(INF)));
                body.push_back(teq(YHI(i, j), treal(INF)));
            }
            std::size_t lam = static_cast<std::size_t>(enc.num_atoms);  // True
            enc.hard.push_back(timplies(tvar(xvar(enc, i, lam)), tand(std::move(body))));
        }
        if (i < 2) continue;

        auto lam_of = [&](OpSym s) {
            for (std::size_t lam = static_cast<std::size_t>(enc.num_atoms);
                 lam < enc.num_labels(); ++lam)
                if (enc.label_op(lam) == s) return lam;
            throw std::logic_error("unknown op symbol");
        };

        for (int k = 1; k < i; ++k) {
            // Negation links the two views with a sign flip.
            {
                std::vector<Term> body;
                for (int j = 0; j < H; ++j) {
                    body.push_back(teq(YLO(i, j), tneg(YHI(k, j))));
                    body.push_back(teq(YHI(i, j), tneg(YLO(k, j))));
                }
                enc.hard.push_back(timplies(
                    tand({tvar(xvar(enc, i, lam_of(OpSym::Not))), tvar(lvar(enc, i, k))}),
                    tand(std::move(body))));
            }
            // F and G aggregate one child over each admissible window.
            for (OpSym s : {OpSym::Eventually, OpSym::Always}) {
                const bool is_max = s == OpSym::Eventually;
                const double fallback = is_max ? -INF : INF;
                for (int A = 0; A < H; ++A)
                    for (int B = A + 1; B <= H; ++B) {
                        std::vector<Term> body;
                        for (int j = 0; j < H; ++j) {
                            body.push_back(teq(
                                YLO(i, j),
                                detail::window_fold(is_max, j, A, B, H, fallback,
                                                    [&](int jp) { return YLO(k, jp); })));
                            body.push_back(teq(
                                YHI(i, j),
                                detail::window_fold(is_max, j, A, B, H, fallback,
                                                    [&](int jp) { return YHI(k, jp); })));
                        }
                        enc.hard.push_back(
                            timplies(tand({tvar(xvar(enc, i, lam_of(s))), tvar(lvar(enc, i, k)),
                                           teq(tvar(avar(enc, i)), tint(A)),
                                           teq(tvar(bvar(enc, i)), tint(B))}),
                                     tand(std::move(body))));
                    }
            }
            for (int kp = 1; kp < i; ++kp) {
                // Conjunction, disjunction, implication.
                for (OpSym s : {OpSym::And, OpSym::Or, OpSym::Implies}) {
                    std::vector<Term> body;
                    for (int j = 0; j < H; ++j) {
                        Term llo = YLO(k, j), lhi = YHI(k, j);
                        Term rlo = YLO(kp, j), rhi = YHI(kp, j);
                        switch (s) {
                            case OpSym::And:
                                body.push_back(teq(YLO(i, j), tmin({llo, rlo})));
                                body.push_back(teq(YHI(i, j), tmin({lhi, rhi})));
                                break;
                            case OpSym::Or:
                                body.push_back(teq(YLO(i, j), tmax({llo, rlo})));
                                body.push_back(teq(YHI(i, j), tmax({lhi, rhi})));
                                break;
                            default:  // Implies: !left | right, left view flipped
                                body.push_back(teq(YLO(i, j), tmax({tneg(lhi), rlo})));
                                body.push_back(teq(YHI(i, j), tmax({tneg(llo), rhi})));
                                break;
                        }
                    }
                    enc.hard.push_back(timplies(
                        tand({tvar(xvar(enc, i, lam_of(s))), tvar(lvar(enc, i, k)),
                              tvar(rvar(enc, i, kp))}),
                        tand(std::move(body))));
                }
                // Until: max over the window of min(right at jp, prefix of left).
                for (int A = 0; A < H; ++A)
                    for (int B = A + 1; B <= H; ++B) {
                        std::vector<Term> body;
                        for (int j = 0; j < H; ++j) {
                            auto until_term = [&](auto&& val_l, auto&& val_r) {
                                std::vector<Term> outer;
                                const int hi = std::min(j + B, H);
                                for (int jp = j + A; jp < hi; ++jp) {
                                    std::vector<Term> inner{val_r(jp)};
                                    for (int jpp = j + A; jpp < jp; ++jpp)
                                        inner.push_back(val_l(jpp));
                                    outer.push_back(tmin(std::move(inner)));
                                }
                                if (outer.empty()) return treal(-INF);
                                return tmax(std::move(outer));
                            };
                            body.push_back(teq(YLO(i, j),
                                               until_term([&](int jj) { return YLO(k, jj); },
                                                          [&](int jj) { return YLO(kp, jj); })));
                            body.push_back(teq(YHI(i, j),
                                               until_term([&](int jj) { return YHI(k, jj); },
                                                          [&](int jj) { return YHI(kp, jj); })));
                        }
                        enc.hard.push_back(timplies(
                            tand({tvar(xvar(enc, i, lam_of(OpSym::Until))),
                                  tvar(lvar(enc, i, k)), tvar(rvar(enc, i, kp)),
                                  teq(tvar(avar(enc, i)), tint(A)),
                                  teq(tvar(bvar(enc, i)), tint(B))}),
                            tand(std::move(body))));
                    }
            }
        }
    }
}

/// The objective Y: the minimum over entries of the root's worst-case value
/// for +1 labels and the negated best-case value for -1 labels.
inline void build_objective_Y(Encoding& enc, const std::vector<Label>& labels) {
    if (labels.empty()) throw std::invalid_argument("build_objective_Y: empty dataset");
    if (static_cast<int>(labels.size()) != enc.num_entries ||
        enc.mode != SemanticsMode::Interval)
        throw std::invalid_argument("build_objective_Y: interval semantics required first");
    const VarId Y = enc.add_var("Y", Sort::Real);
    std::vector<Term> parts;
    for (std::size_t e = 0; e < labels.size(); ++e) {
        VarId root_lo = enc.ylo[e][static_cast<std::size_t>(enc.n - 1)][0];
        VarId root_hi = enc.yhi[e][static_cast<std::size_t>(enc.n - 1)][0];
        parts.push_back(labels[e] == Label::Desired ? tvar(root_lo) : tneg(tvar(root_hi)));
    }
    enc.hard.push_back(teq(tvar(Y), tmin(std::move(parts))));
    enc.objective = tvar(Y);
    enc.objective_var = Y;
}

// ---- point semantics ---------------------------------------------------------

/// Boolean tracking of the strong and weak valuation of every node on one
/// point trajectory. Positions beyond the horizon collapse to the per-node
/// constants sb/wb (a predicate is strongly false and weakly true there).
inline void build_semantic_point(Encoding& enc, const PredicateGrammar& grammar,
                                 const Trajectory& t) {
    if (static_cast<int>(t.length()) != enc.horizon)
        throw std::invalid_argument("build_semantic_point: horizon mismatch");
    enc.mode = SemanticsMode::Point;
    const int e = enc.num_entries++;
    const int H = enc.horizon;

    auto& ys = enc.ys.emplace_back();
    auto& yw = enc.yw.emplace_back();
    auto& sb = enc.sb.emplace_back();
    auto& wb = enc.wb.emplace_back();
    ys.resize(static_cast<std::size_t>(enc.n));
    yw.resize(static_cast<std::size_t>(enc.n));
    for (int i = 1; i <= enc.n; ++i) {
        for (int j = 0; j < H; ++j) {
            const std::string base = std::to_string(e) + "_" + std::to_string(i) + "_" +
                                     std::to_string(j);
            ys[static_cast<std::size_t>(i - 1)].push_back(enc.add_var("ys" + base, Sort::Bool));
            yw[static_cast<std::size_t>(i - 1)].push_back(enc.add_var("yw" + base, Sort::Bool));
        }
        const std::string nb = std::to_string(e) + "_" + std::to_string(i);
        sb.push_back(enc.add_var("sb" + nb, Sort::Bool));
        wb.push_back(enc.add_var("wb" + nb, Sort::Bool));
    }

    // Strong/weak value of node k at position jp, constants beyond horizon.
    auto YS = [&](int k, int jp) -> Term {
        if (jp < H) return tvar(ys[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(jp)]);
        return tvar(sb[static_cast<std::size_t>(k - 1)]);
    };
    auto YW = [&](int k, int jp) -> Term {
        if (jp < H) return tvar(yw[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(jp)]);
        return tvar(wb[static_cast<std::size_t>(k - 1)]);
    };
    auto SB = [&](int k) { return tvar(sb[static_cast<std::size_t>(k - 1)]); };
    auto WB = [&](int k) { return tvar(wb[static_cast<std::size_t>(k - 1)]); };

    auto lam_of = [&](OpSym s) {
        for (std::size_t lam = static_cast<std::size_t>(enc.num_atoms); lam < enc.num_labels();
             ++lam)
            if (enc.label_op(lam) == s) return lam;
        throw std::logic_error("unknown op symbol");
    };

    for (int i = 1; i <= enc.n; ++i) {
        for (int q = 0; q < enc.num_atoms; ++q) {
            const auto& atom = grammar.atoms[static_cast<std::size_t>(q)];
            std::vector<Term> body;
            for (int j = 0; j < H; ++j) {
                double dot = 0.0;
                for (std::size_t k = 0; k < atom.coeffs.size(); ++k)
                    dot += atom.coeffs[k] * t.at(static_cast<std::size_t>(j))[k];
                Term f = atom.sense == Sense::Gt
                             ? tsub(treal(dot), tvar(cvar(enc, i, static_cast<std::size_t>(q))))
                             : tsub(tvar(cvar(enc, i, static_cast<std::size_t>(q))), treal(dot));
                Term holds = tlt(treal(0.0), f);
                body.push_back(tiff(YS(i, j), holds));
                body.push_back(tiff(YW(i, j), holds));
            }
            body.push_back(tnot(SB(i)));
            body.push_back(WB(i));
            enc.hard.push_back(
                timplies(tvar(xvar(enc, i, static_cast<std::size_t>(q))), tand(std::move(body))));
        }
        {
            std::vector<Term> body;
            for (int j = 0; j < H; ++j) {
                body.push_back(YS(i, j));
                body.push_back(YW(i, j));
            }
            body.push_back(SB(i));
            body.push_back(WB(i));
            enc.hard.push_back(
                timplies(tvar(xvar(enc, i, lam_of(OpSym::True))), tand(std::move(body))));
        }
        if (i < 2) continue;

        for (int k = 1; k < i; ++k) {
            {  // negation: strong of !phi is "not weakly phi" and dually
                std::vector<Term> body;
                for (int j = 0; j < H; ++j) {
                    body.push_back(tiff(YS(i, j), tnot(YW(k, j))));
                    body.push_back(tiff(YW(i, j), tnot(YS(k, j))));
                }
                body.push_back(tiff(SB(i), tnot(WB(k))));
                body.push_back(tiff(WB(i), tnot(SB(k))));
                enc.hard.push_back(timplies(
                    tand({tvar(xvar(enc, i, lam_of(OpSym::Not))), tvar(lvar(enc, i, k))}),
                    tand(std::move(body))));
            }
            for (OpSym s : {OpSym::Eventually, OpSym::Always}) {
                const bool exists = s == OpSym::Eventually;
                for (int A = 0; A < H; ++A)
                    for (int B = A + 1; B <= H; ++B) {
                        std::vector<Term> body;
                        for (int j = 0; j < H; ++j) {
                            std::vector<Term> ps, pw;
                            for (int jp = j + A; jp < j + B; ++jp) {
                                ps.push_back(YS(k, jp));
                                pw.push_back(YW(k, jp));
                            }
                            body.push_back(tiff(YS(i, j), exists ? tor(ps) : tand(ps)));
                            body.push_back(tiff(YW(i, j), exists ? tor(pw) : tand(pw)));
                        }
                        body.push_back(tiff(SB(i), SB(k)));
                        body.push_back(tiff(WB(i), WB(k)));
                        enc.hard.push_back(
                            timplies(tand({tvar(xvar(enc, i, lam_of(s))), tvar(lvar(enc, i, k)),
                                           teq(tvar(avar(enc, i)), tint(A)),
                                           teq(tvar(bvar(enc, i)), tint(B))}),
                                     tand(std::move(body))));
                    }
            }
            for (int kp = 1; kp < i; ++kp) {
                for (OpSym s : {OpSym::And, OpSym::Or, OpSym::Implies}) {
                    std::vector<Term> body;
                    auto combine = [&](Term lft, Term rgt, Term lft_dual) {
                        switch (s) {
                            case OpSym::And: return tand({lft, rgt});
                            case OpSym::Or: return tor({lft, rgt});
                            default: return tor({tnot(lft_dual), rgt});
                        }
                    };
                    for (int j = 0; j < H; ++j) {
                        body.push_back(tiff(YS(i, j), combine(YS(k, j), YS(kp, j), YW(k, j))));
                        body.push_back(tiff(YW(i, j), combine(YW(k, j), YW(kp, j), YS(k, j))));
                    }
                    body.push_back(tiff(SB(i), combine(SB(k), SB(kp), WB(k))));
                    body.push_back(tiff(WB(i), combine(WB(k), WB(kp), SB(k))));
                    enc.hard.push_back(timplies(
                        tand({tvar(xvar(enc, i, lam_of(s))), tvar(lvar(enc, i, k)),
                              tvar(rvar(enc, i, kp))}),
                        tand(std::move(body))));
                }
                for (int A = 0; A < H; ++A)
                    for (int B = A + 1; B <= H; ++B) {
                        std::vector<Term> body;
                        auto until_at = [&](int j, auto&& val_l, auto&& val_r) {
                            std::vector<Term> outer;
                            for (int jp = j + A; jp < j + B; ++jp) {
                                std::vector<Term> conj{val_r(jp)};
                                for (int jpp = j + A; jpp < jp; ++jpp)
                                    conj.push_back(val_l(jpp));
                                outer.push_back(tand(std::move(conj)));
                            }
                            return tor(std::move(outer));
                        };
                        for (int j = 0; j < H; ++j) {
                            body.push_back(tiff(
                                YS(i, j), until_at(
                                              j, [&](int jj) { return YS(k, jj); },
                                              [&](int jj) { return YS(kp, jj); })));
                            body.push_back(tiff(
                                YW(i, j), until_at(
                                              j, [&](int jj) { return YW(k, jj); },
                                              [&](int jj) { return YW(kp, jj); })));
                        }
                        body.push_back(tiff(SB(i), SB(kp)));
                        body.push_back(tiff(WB(i), WB(kp)));
                        enc.hard.push_back(timplies(
                            tand({tvar(xvar(enc, i, lam_of(OpSym::Until))),
                                  tvar(lvar(enc, i, k)), tvar(rvar(enc, i, kp)),
                                  teq(tvar(avar(enc, i)), tint(A)),
                                  teq(tvar(bvar(enc, i)), tint(B))}),
                            tand(std::move(body))));
                    }
            }
        }
    }
}

/// Weight-1 soft constraints asking each entry to be classified correctly:
/// the root strongly satisfied at t0 for +1 entries, strongly violated for
/// -1 entries. The semantic tracking formulas are already hard constraints.
inline void build_consistency(Encoding& enc, const std::vector<Label>& labels) {
    if (labels.empty()) throw std::invalid_argument("build_consistency: empty dataset");
    if (static_cast<int>(labels.size()) != enc.num_entries || enc.mode != SemanticsMode::Point)
        throw std::invalid_argument("build_consistency: point semantics required first");
    for (std::size_t e = 0; e < labels.size(); ++e) {
        Term root = tvar(enc.ys[e][static_cast<std::size_t>(enc.n - 1)][0]);
        enc.soft.emplace_back(labels[e] == Label::Desired ? root : tnot(root), 1.0);
    }
}

// ---- decoding ----------------------------------------------------------------

/// Reconstruct the formula from a model: label each node by its unique true
/// x variable, read windows from a_i/b_i, wire children from l/r, root at
/// node n. Shared children stay shared.
inline StlFormula decode_model(const Encoding& enc, const SolverModel& m,
                               const PredicateGrammar& grammar) {
    if (!m.has_model()) throw std::invalid_argument("decode_model: no model");
    std::vector<StlFormula> memo(static_cast<std::size_t>(enc.n) + 1);
    auto build = [&](auto&& self, int i) -> StlFormula {
        auto& slot = memo[static_cast<std::size_t>(i)];
        if (slot) return slot;
        int chosen = -1;
        for (std::size_t lam = 0; lam < enc.num_labels(); ++lam) {
            if (!m.bval(xvar(enc, i, lam))) continue;
            if (chosen >= 0) throw std::runtime_error("decode_model: node with two labels");
            chosen = static_cast<int>(lam);
        }
        if (chosen < 0) throw std::runtime_error("decode_model: unlabeled node");
        const std::size_t lam = static_cast<std::size_t>(chosen);
        if (enc.label_is_atom(lam)) {
            double th = m.rval(cvar(enc, i, lam));
            slot = f_pred(grammar.atoms[lam].instantiate(th));
            return slot;
        }
        const OpSym s = enc.label_op(lam);
        if (s == OpSym::True) {
            slot = f_true();
            return slot;
        }
        auto child = [&](const std::vector<std::vector<VarId>>& table) -> int {
            int found = -1;
            const auto& row = table[static_cast<std::size_t>(i - 1)];
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (!m.bval(row[k])) continue;
                if (found >= 0) throw std::runtime_error("decode_model: node with two children");
                found = static_cast<int>(k) + 1;
            }
            if (found < 0) throw std::runtime_error("decode_model: inner node without child");
            return found;
        };
        StlFormula left = self(self, child(enc.l));
        if (op_sym_unary(s)) {
            if (s == OpSym::Not) {
                slot = f_not(left);
            } else {
                TimeWindow w(static_cast<int>(m.ival(avar(enc, i))),
                             static_cast<int>(m.ival(bvar(enc, i))));
                slot = s == OpSym::Eventually ? f_eventually(w, left) : f_always(w, left);
            }
            return slot;
        }
        StlFormula right = self(self, child(enc.r));
        switch (s) {
            case OpSym::And: slot = f_and(left, right); break;
            case OpSym::Or: slot = f_or(left, right); break;
            case OpSym::Implies: slot = f_implies(left, right); break;
            case OpSym::Until: {
                TimeWindow w(static_cast<int>(m.ival(avar(enc, i))),
                             static_cast<int>(m.ival(bvar(enc, i))));
                slot = f_until(w, left, right);
                break;
            }
            default: throw std::logic_error("decode_model: unreachable");
        }
        return slot;
    };
    return build(build, enc.n);
}

}  // namespace uastl::ir
