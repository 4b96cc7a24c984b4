#pragma once

// Random dataset generation following the experiment shape: up to three
// interval trajectories per class, up to two dimensions, time length up to
// ten. Separable datasets are post-validated against the pairwise
// separability definition; non-separable ones must contain a cross-class
// pair whose boxes intersect at every timestep and dimension.

#include <random>
#include <stdexcept>

#include "uastl/core.hpp"
#include "uastl/infer/sampling.hpp"

namespace uastl {

enum class DatasetKind { Separable, NonSeparable };

struct GenConfig {
    DatasetKind kind = DatasetKind::Separable;
    std::size_t dims = 1;
    std::size_t per_class = 3;
    std::size_t length = 10;
    std::uint64_t seed = 0;
    std::size_t max_attempts = 1000;
};

namespace detail {

inline IntervalTrajectory random_walk_boxes(std::mt19937_64& rng, std::size_t dims,
                                            std::size_t length, double center_lo,
                                            double center_hi) {
    std::uniform_real_distribution<double> center0(center_lo, center_hi);
    std::uniform_real_distribution<double> step(-2.0, 2.0);
    std::uniform_real_distribution<double> halfw(0.2, 1.5);
    std::vector<double> center(dims);
    for (double& c : center) c = center0(rng);
    std::vector<std::vector<Interval>> boxes(length);
    for (std::size_t j = 0; j < length; ++j) {
        for (std::size_t k = 0; k < dims; ++k) {
            if (j > 0) center[k] += step(rng);
            const double h = halfw(rng);
            boxes[j].emplace_back(center[k] - h, center[k] + h);
        }
    }
    return IntervalTrajectory(std::move(boxes));
}

/// True when some cross-class pair intersects at every (timestep, dimension).
inline bool violates_separability(const LabeledDataset& d) {
    for (const auto& [pa, la] : d.entries()) {
        if (la != Label::Desired) continue;
        for (const auto& [pb, lb] : d.entries()) {
            if (lb != Label::Undesired) continue;
            if (!check_separable(pa, pb)) return true;
        }
    }
    return false;
}

}  // namespace detail

inline LabeledDataset gen_dataset(const GenConfig& cfg) {
    if (cfg.dims < 1 || cfg.dims > 2)
        throw std::invalid_argument("gen_dataset: dims must be 1 or 2");
    if (cfg.per_class < 1 || cfg.per_class > 3)
        throw std::invalid_argument("gen_dataset: per_class must be 1..3");
    if (cfg.length < 1 || cfg.length > 10)
        throw std::invalid_argument("gen_dataset: length must be 1..10");

    std::mt19937_64 rng(cfg.seed);
    for (std::size_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
        LabeledDataset d;
        if (cfg.kind == DatasetKind::Separable) {
            // Separate the classes at one random coordinate: positives get
            // shifted upward there until the gap is clear.
            std::uniform_int_distribution<std::size_t> pick_j(0, cfg.length - 1);
            std::uniform_int_distribution<std::size_t> pick_k(0, cfg.dims - 1);
            const std::size_t sj = pick_j(rng), sk = pick_k(rng);
            std::uniform_real_distribution<double> gap(0.5, 3.0);
            const double margin = gap(rng);

            std::vector<IntervalTrajectory> pos, neg;
            double neg_top = kMinusInf;
            for (std::size_t e = 0; e < cfg.per_class; ++e) {
                neg.push_back(detail::random_walk_boxes(rng, cfg.dims, cfg.length, 0.0, 6.0));
                neg_top = std::max(neg_top, neg.back().at(sj)[sk].hi);
            }
            for (std::size_t e = 0; e < cfg.per_class; ++e) {
                IntervalTrajectory it =
                    detail::random_walk_boxes(rng, cfg.dims, cfg.length, 0.0, 6.0);
                auto boxes = it.boxes();
                const double shift = (neg_top + margin) - boxes[sj][sk].lo;
                if (shift > 0.0)
                    boxes[sj][sk] = Interval(boxes[sj][sk].lo + shift, boxes[sj][sk].hi + shift);
                pos.emplace_back(std::move(boxes));
            }
            for (auto& it : pos) d.push_back(std::move(it), Label::Desired);
            for (auto& it : neg) d.push_back(std::move(it), Label::Undesired);
            if (dataset_separable(d)) return d;
        } else {
            // Overlapping classes: both drawn from the same band, then the
            // first positive is forced to overlap the first negative
            // everywhere.
            for (std::size_t e = 0; e < cfg.per_class; ++e)
                d.push_back(detail::random_walk_boxes(rng, cfg.dims, cfg.length, 0.0, 5.0),
                            Label::Desired);
            for (std::size_t e = 0; e < cfg.per_class; ++e)
                d.push_back(detail::random_walk_boxes(rng, cfg.dims, cfg.length, 0.0, 5.0),
                            Label::Undesired);
            const IntervalTrajectory& pos0 = d[0].first;
            auto boxes = d[cfg.per_class].first.boxes();
            std::uniform_real_distribution<double> jitter(-0.3, 0.3);
            for (std::size_t j = 0; j < cfg.length; ++j)
                for (std::size_t k = 0; k < cfg.dims; ++k) {
                    const Interval& p = pos0.at(j)[k];
                    boxes[j][k] = Interval(p.lo + jitter(rng) - 0.2, p.hi + jitter(rng) + 0.2);
                }
            LabeledDataset fixed;
            for (std::size_t e = 0; e < d.size(); ++e) {
                if (e == cfg.per_class)
                    fixed.push_back(IntervalTrajectory(boxes), Label::Undesired);
                else
                    fixed.push_back(d[e].first, d[e].second);
            }
            if (detail::violates_separability(fixed)) return fixed;
        }
    }
    throw std::runtime_error("gen_dataset: generation cap exceeded");
}

}  // namespace uastl
