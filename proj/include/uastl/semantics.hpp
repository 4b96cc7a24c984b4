#pragma once

// Boolean semantics in strong and weak views, classical robust semantics,
// and the worst-/best-case robustness of interval trajectories.
//
// Conventions:
//  - Positions are indices 0..J into the trajectory; a predicate queried
//    beyond J is false in the strong view and true in the weak view.
//  - Robust semantics clip temporal windows to valid indices; a window that
//    clips to nothing yields -inf under max-aggregation (F, the outer max
//    of U) and +inf under min-aggregation (G).
//  - The interval robustness is the node-wise recursion: negation flips the
//    view and the sign, every other operator propagates the view through
//    its min/max combination, and predicates take the exact extremum of
//    their affine function over the box.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "uastl/core.hpp"
#include "uastl/formula.hpp"

namespace uastl {

enum class RobustnessView { WorstCase, BestCase };

inline RobustnessView flip_view(RobustnessView v) {
    return v == RobustnessView::WorstCase ? RobustnessView::BestCase
                                          : RobustnessView::WorstCase;
}

namespace detail {

enum class BoolView { Strong, Weak };

inline BoolView flip_bool_view(BoolView v) {
    return v == BoolView::Strong ? BoolView::Weak : BoolView::Strong;
}

inline bool eval_bool(const Trajectory& t, const FormulaNode* f, long j, BoolView view) {
    const long J = static_cast<long>(t.last_index());
    switch (f->op) {
        case Op::True:
            return true;
        case Op::Pred:
            if (j > J) return view == BoolView::Weak;
            return f->pred.eval(t.at(static_cast<std::size_t>(j))) > 0.0;
        case Op::Not:
            return !eval_bool(t, f->left.get(), j, flip_bool_view(view));
        case Op::And:
            return eval_bool(t, f->left.get(), j, view) &&
                   eval_bool(t, f->right.get(), j, view);
        case Op::Or:
            return eval_bool(t, f->left.get(), j, view) ||
                   eval_bool(t, f->right.get(), j, view);
        case Op::Implies:
            return !eval_bool(t, f->left.get(), j, flip_bool_view(view)) ||
                   eval_bool(t, f->right.get(), j, view);
        case Op::Eventually:
            for (long jp = j + f->window.a; jp < j + f->window.b; ++jp)
                if (eval_bool(t, f->left.get(), jp, view)) return true;
            return false;
        case Op::Always:
            for (long jp = j + f->window.a; jp < j + f->window.b; ++jp)
                if (!eval_bool(t, f->left.get(), jp, view)) return false;
            return true;
        case Op::Until:
            for (long jp = j + f->window.a; jp < j + f->window.b; ++jp) {
                if (!eval_bool(t, f->right.get(), jp, view)) continue;
                bool prefix = true;
                for (long jpp = j + f->window.a; jpp < jp && prefix; ++jpp)
                    prefix = eval_bool(t, f->left.get(), jpp, view);
                if (prefix) return true;
            }
            return false;
    }
    return false;
}

inline void check_dims(std::size_t traj_dims, const StlFormula& f) {
    if (formula_dims(f) > traj_dims)
        throw std::invalid_argument("formula references a dimension beyond the data");
}

}  // namespace detail

/// Strong-view Boolean satisfaction at position j.
inline bool eval_strong(const Trajectory& t, const StlFormula& f, std::size_t j) {
    detail::check_dims(t.dims(), f);
    return detail::eval_bool(t, f.get(), static_cast<long>(j), detail::BoolView::Strong);
}

/// Weak-view Boolean satisfaction at position j.
inline bool eval_weak(const Trajectory& t, const StlFormula& f, std::size_t j) {
    detail::check_dims(t.dims(), f);
    return detail::eval_bool(t, f.get(), static_cast<long>(j), detail::BoolView::Weak);
}

namespace detail {

inline double robustness_rec(const Trajectory& t, const FormulaNode* f, long j) {
    const long J = static_cast<long>(t.last_index());
    switch (f->op) {
        case Op::True:
            return kPlusInf;
        case Op::Pred:
            if (j < 0 || j > J) throw std::out_of_range("robustness: position beyond horizon");
            return f->pred.eval(t.at(static_cast<std::size_t>(j)));
        case Op::Not:
            return -robustness_rec(t, f->left.get(), j);
        case Op::And:
            return std::min(robustness_rec(t, f->left.get(), j),
                            robustness_rec(t, f->right.get(), j));
        case Op::Or:
            return std::max(robustness_rec(t, f->left.get(), j),
                            robustness_rec(t, f->right.get(), j));
        case Op::Implies:
            return std::max(-robustness_rec(t, f->left.get(), j),
                            robustness_rec(t, f->right.get(), j));
        case Op::Eventually: {
            double best = kMinusInf;
            const long hi = std::min(j + f->window.b, J + 1);
            for (long jp = j + f->window.a; jp < hi; ++jp)
                best = std::max(best, robustness_rec(t, f->left.get(), jp));
            return best;
        }
        case Op::Always: {
            double worst = kPlusInf;
            const long hi = std::min(j + f->window.b, J + 1);
            for (long jp = j + f->window.a; jp < hi; ++jp)
                worst = std::min(worst, robustness_rec(t, f->left.get(), jp));
            return worst;
        }
        case Op::Until: {
            double best = kMinusInf;
            double prefix = kPlusInf;
            const long hi = std::min(j + f->window.b, J + 1);
            for (long jp = j + f->window.a; jp < hi; ++jp) {
                best = std::max(best, std::min(robustness_rec(t, f->right.get(), jp), prefix));
                prefix = std::min(prefix, robustness_rec(t, f->left.get(), jp));
            }
            return best;
        }
    }
    return kMinusInf;
}

}  // namespace detail

/// Robustness margin r(zeta, phi, t_j) of a point trajectory.
inline ExtendedReal robustness(const Trajectory& t, const StlFormula& f, std::size_t j) {
    detail::check_dims(t.dims(), f);
    if (j >= t.length()) throw std::out_of_range("robustness: position beyond horizon");
    return detail::robustness_rec(t, f.get(), static_cast<long>(j));
}

namespace detail {

inline double interval_robustness_rec(const IntervalTrajectory& it, const FormulaNode* f,
                                      long j, RobustnessView view) {
    const long J = static_cast<long>(it.last_index());
    const bool worst = view == RobustnessView::WorstCase;
    switch (f->op) {
        case Op::True:
            return kPlusInf;
        case Op::Pred:
            if (j < 0 || j > J)
                throw std::out_of_range("interval_robustness: position beyond horizon");
            return f->pred.extremum(it.at(static_cast<std::size_t>(j)), /*maximize=*/!worst);
        case Op::Not:
            return -interval_robustness_rec(it, f->left.get(), j, flip_view(view));
        case Op::And:
            return std::min(interval_robustness_rec(it, f->left.get(), j, view),
                            interval_robustness_rec(it, f->right.get(), j, view));
        case Op::Or:
            return std::max(interval_robustness_rec(it, f->left.get(), j, view),
                            interval_robustness_rec(it, f->right.get(), j, view));
        case Op::Implies:
            return std::max(-interval_robustness_rec(it, f->left.get(), j, flip_view(view)),
                            interval_robustness_rec(it, f->right.get(), j, view));
        case Op::Eventually: {
            double best = kMinusInf;
            const long hi = std::min(j + f->window.b, J + 1);
            for (long jp = j + f->window.a; jp < hi; ++jp)
                best = std::max(best, interval_robustness_rec(it, f->left.get(), jp, view));
            return best;
        }
        case Op::Always: {
            double acc = kPlusInf;
            const long hi = std::min(j + f->window.b, J + 1);
            for (long jp = j + f->window.a; jp < hi; ++jp)
                acc = std::min(acc, interval_robustness_rec(it, f->left.get(), jp, view));
            return acc;
        }
        case Op::Until: {
            double best = kMinusInf;
            double prefix = kPlusInf;
            const long hi = std::min(j + f->window.b, J + 1);
            for (long jp = j + f->window.a; jp < hi; ++jp) {
                best = std::max(
                    best, std::min(interval_robustness_rec(it, f->right.get(), jp, view), prefix));
                prefix = std::min(prefix, interval_robustness_rec(it, f->left.get(), jp, view));
            }
            return best;
        }
    }
    return kMinusInf;
}

}  // namespace detail

/// Worst-case or best-case robustness of an interval trajectory, computed by
/// the node-wise recursion.
inline ExtendedReal interval_robustness(const IntervalTrajectory& it, const StlFormula& f,
                                        std::size_t j, RobustnessView view) {
    detail::check_dims(it.dims(), f);
    if (j >= it.length())
        throw std::out_of_range("interval_robustness: position beyond horizon");
    return detail::interval_robustness_rec(it, f.get(), static_cast<long>(j), view);
}

// ---- brute-force oracle -----------------------------------------------------

struct OracleOptions {
    /// Refuse instances with more corner trajectories than this.
    std::size_t max_corners = std::size_t(1) << 22;
    /// Additional uniform interior samples (0 disables).
    std::size_t interior_samples = 0;
    std::uint64_t seed = 0;
};

/// Min (worst case) or max (best case) of the point robustness over all
/// corner trajectories of the boxes, optionally refined with random interior
/// members. Exact for formulas in which every signal dimension occurs with a
/// single polarity.
inline ExtendedReal oracle_interval_robustness(const IntervalTrajectory& it, const StlFormula& f,
                                               std::size_t j, RobustnessView view,
                                               const OracleOptions& opts = {}) {
    detail::check_dims(it.dims(), f);
    if (j >= it.length())
        throw std::out_of_range("oracle_interval_robustness: position beyond horizon");

    // Coordinates with lo < hi are the only ones with two distinct corners.
    std::vector<std::pair<std::size_t, std::size_t>> free_coords;
    for (std::size_t t = 0; t < it.length(); ++t)
        for (std::size_t k = 0; k < it.dims(); ++k)
            if (!it.at(t)[k].degenerate()) free_coords.emplace_back(t, k);

    if (free_coords.size() >= 8 * sizeof(std::size_t) ||
        (std::size_t(1) << free_coords.size()) > opts.max_corners)
        throw std::length_error("oracle_interval_robustness: instance too large");

    std::vector<std::vector<double>> values(it.length(), std::vector<double>(it.dims()));
    for (std::size_t t = 0; t < it.length(); ++t)
        for (std::size_t k = 0; k < it.dims(); ++k) values[t][k] = it.at(t)[k].lo;

    const bool worst = view == RobustnessView::WorstCase;
    double acc = worst ? kPlusInf : kMinusInf;
    const std::size_t corners = std::size_t(1) << free_coords.size();
    for (std::size_t mask = 0; mask < corners; ++mask) {
        for (std::size_t b = 0; b < free_coords.size(); ++b) {
            auto [t, k] = free_coords[b];
            values[t][k] = (mask >> b) & 1 ? it.at(t)[k].hi : it.at(t)[k].lo;
        }
        double r = robustness(Trajectory(values), f, j);
        acc = worst ? std::min(acc, r) : std::max(acc, r);
    }

    if (opts.interior_samples > 0) {
        std::mt19937_64 rng(opts.seed);
        for (std::size_t s = 0; s < opts.interior_samples; ++s) {
            for (std::size_t t = 0; t < it.length(); ++t)
                for (std::size_t k = 0; k < it.dims(); ++k) {
                    const Interval& iv = it.at(t)[k];
                    if (iv.degenerate()) {
                        values[t][k] = iv.lo;
                    } else {
                        std::uniform_real_distribution<double> dist(iv.lo, iv.hi);
                        values[t][k] = dist(rng);
                    }
                }
            double r = robustness(Trajectory(values), f, j);
            acc = worst ? std::min(acc, r) : std::max(acc, r);
        }
    }
    return acc;
}

// ---- diagnostics -------------------------------------------------------------

/// Per-dimension polarity profile of a formula: for each dimension records
/// whether it occurs positively and/or negatively (through coefficient sign,
/// predicate sense, and negation parity).
struct PolarityProfile {
    std::vector<bool> positive;
    std::vector<bool> negative;

    bool mixed() const {
        for (std::size_t k = 0; k < positive.size(); ++k)
            if (positive[k] && negative[k]) return true;
        return false;
    }
};

namespace detail {

inline void polarity_rec(const FormulaNode* f, int parity, PolarityProfile& p) {
    switch (f->op) {
        case Op::True:
            return;
        case Op::Pred: {
            for (std::size_t k = 0; k < f->pred.coeffs.size(); ++k) {
                double w = f->pred.coeffs[k];
                if (w == 0.0) continue;
                int dir = (w > 0 ? 1 : -1) * (f->pred.sense == Sense::Gt ? 1 : -1) * parity;
                if (k >= p.positive.size()) {
                    p.positive.resize(k + 1, false);
                    p.negative.resize(k + 1, false);
                }
                (dir > 0 ? p.positive : p.negative)[k] = true;
            }
            return;
        }
        case Op::Not:
            polarity_rec(f->left.get(), -parity, p);
            return;
        case Op::Implies:
            polarity_rec(f->left.get(), -parity, p);
            polarity_rec(f->right.get(), parity, p);
            return;
        case Op::And:
        case Op::Or:
        case Op::Until:
            polarity_rec(f->left.get(), parity, p);
            polarity_rec(f->right.get(), parity, p);
            return;
        case Op::Eventually:
        case Op::Always:
            polarity_rec(f->left.get(), parity, p);
            return;
    }
}

}  // namespace detail

inline PolarityProfile polarity_profile(const StlFormula& f) {
    PolarityProfile p;
    detail::polarity_rec(f.get(), +1, p);
    return p;
}

/// The node-wise interval robustness matches the set-wise definition on
/// single-polarity formulas; mixed-polarity formulas may evaluate
/// conservatively. Used for diagnostics.
inline bool has_mixed_polarity(const StlFormula& f) { return polarity_profile(f).mixed(); }

/// True when every temporal window reachable from position j0 stays entirely
/// within 0..length-1, i.e. the robustness recursion never clips.
inline bool windows_within_horizon(const StlFormula& f, std::size_t length, std::size_t j0 = 0) {
    const long J = static_cast<long>(length) - 1;
    // check(node, jlo, jhi): node evaluated at every position in [jlo, jhi].
    auto check = [&](auto&& self, const FormulaNode* n, long jlo, long jhi) -> bool {
        if (jhi < jlo) return true;  // never evaluated
        if (jhi > J) return false;
        switch (n->op) {
            case Op::True:
            case Op::Pred:
                return true;
            case Op::Not:
                return self(self, n->left.get(), jlo, jhi);
            case Op::And:
            case Op::Or:
            case Op::Implies:
                return self(self, n->left.get(), jlo, jhi) &&
                       self(self, n->right.get(), jlo, jhi);
            case Op::Eventually:
            case Op::Always:
                return self(self, n->left.get(), jlo + n->window.a, jhi + n->window.b - 1);
            case Op::Until:
                return self(self, n->left.get(), jlo + n->window.a, jhi + n->window.b - 2) &&
                       self(self, n->right.get(), jlo + n->window.a, jhi + n->window.b - 1);
        }
        return true;
    };
    const long j = static_cast<long>(j0);
    return check(check, f.get(), j, j);
}

}  // namespace uastl
