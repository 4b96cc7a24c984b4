#pragma once

// Trajectory sampling for the baselines, separability checking, and the
// constructive classifier for separable datasets.

#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "uastl/core.hpp"
#include "uastl/formula.hpp"
#include "uastl/objective.hpp"

namespace uastl {

/// k member trajectories of the interval trajectory, every coordinate drawn
/// independently and uniformly within its interval. Deterministic per seed.
inline std::vector<Trajectory> sample_trajectories(const IntervalTrajectory& it, std::size_t k,
                                                   std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("sample_trajectories: k must be positive");
    std::mt19937_64 rng(seed);
    std::vector<Trajectory> out;
    out.reserve(k);
    std::vector<std::vector<double>> values(it.length(), std::vector<double>(it.dims()));
    for (std::size_t s = 0; s < k; ++s) {
        for (std::size_t j = 0; j < it.length(); ++j)
            for (std::size_t d = 0; d < it.dims(); ++d) {
                const Interval& iv = it.at(j)[d];
                if (iv.degenerate()) {
                    values[j][d] = iv.lo;
                } else {
                    std::uniform_real_distribution<double> dist(iv.lo, iv.hi);
                    values[j][d] = dist(rng);
                }
            }
        out.emplace_back(values);
    }
    return out;
}

/// Sample every entry of an interval dataset into a point dataset, keeping
/// labels. Entry e uses seed+e so datasets stay reproducible as a whole.
inline PointDataset sample_dataset(const LabeledDataset& d, std::size_t per_entry,
                                   std::uint64_t seed) {
    PointDataset out;
    for (std::size_t e = 0; e < d.size(); ++e) {
        const auto& [it, l] = d[e];
        for (Trajectory& t : sample_trajectories(it, per_entry, seed + e))
            out.push_back(std::move(t), l);
    }
    return out;
}

/// Witness of separability: the first (timestep, dimension), scanned in
/// increasing order, where the two interval trajectories do not intersect.
inline std::optional<std::pair<std::size_t, std::size_t>> check_separable(
    const IntervalTrajectory& a, const IntervalTrajectory& b) {
    if (a.length() != b.length() || a.dims() != b.dims())
        throw std::invalid_argument("check_separable: shape mismatch");
    for (std::size_t j = 0; j < a.length(); ++j)
        for (std::size_t k = 0; k < a.dims(); ++k)
            if (!a.at(j)[k].intersects(b.at(j)[k])) return std::make_pair(j, k);
    return std::nullopt;
}

/// A labeled dataset is separable when every (+1, -1) pair of interval
/// trajectories is separable.
inline bool dataset_separable(const LabeledDataset& d) {
    for (const auto& [pa, la] : d.entries()) {
        if (la != Label::Desired) continue;
        for (const auto& [pb, lb] : d.entries()) {
            if (lb != Label::Undesired) continue;
            if (!check_separable(pa, pb)) return false;
        }
    }
    return true;
}

/// Perfectly classifying formula for a separable dataset, built from the
/// pairwise midpoint construction: for each (+1, -1) pair pick the witness
/// with the widest gap and emit F_[j,j+1)(x^k > delta) (or < delta), with
/// delta the midpoint of the gap; the result is the disjunction over +1
/// entries of the conjunction over -1 entries. Throws when not separable.
inline StlFormula constructive_classifier(const LabeledDataset& d) {
    if (d.empty()) throw std::invalid_argument("constructive_classifier: empty dataset");
    const std::size_t dims = d.dims();

    std::vector<StlFormula> disjuncts;
    for (const auto& [pos, lp] : d.entries()) {
        if (lp != Label::Desired) continue;
        StlFormula conj;
        for (const auto& [neg, ln] : d.entries()) {
            if (ln != Label::Undesired) continue;
            // Widest-gap witness for this pair.
            double best_gap = -1.0;
            std::size_t bj = 0, bk = 0;
            for (std::size_t j = 0; j < d.length(); ++j)
                for (std::size_t k = 0; k < dims; ++k) {
                    const Interval& p = pos.at(j)[k];
                    const Interval& q = neg.at(j)[k];
                    if (p.intersects(q)) continue;
                    if (p.gap(q) > best_gap) {
                        best_gap = p.gap(q);
                        bj = j;
                        bk = k;
                    }
                }
            if (best_gap < 0.0)
                throw std::invalid_argument("constructive_classifier: dataset not separable");
            const Interval& p = pos.at(bj)[bk];
            const Interval& q = neg.at(bj)[bk];
            std::vector<double> w(dims, 0.0);
            w[bk] = 1.0;
            Predicate pred = p.lo > q.hi
                                 ? Predicate(w, Sense::Gt, 0.5 * (q.hi + p.lo))
                                 : Predicate(w, Sense::Lt, 0.5 * (p.hi + q.lo));
            StlFormula pair_formula = f_eventually(
                TimeWindow(static_cast<int>(bj), static_cast<int>(bj) + 1), f_pred(pred));
            conj = conj ? f_and(conj, pair_formula) : pair_formula;
        }
        if (!conj) conj = f_true();  // no -1 entries to separate from
        disjuncts.push_back(conj);
    }
    if (disjuncts.empty())
        throw std::invalid_argument("constructive_classifier: no +1 entries");
    StlFormula out;
    for (StlFormula& f : disjuncts) out = out ? f_or(out, f) : f;
    return out;
}

}  // namespace uastl
