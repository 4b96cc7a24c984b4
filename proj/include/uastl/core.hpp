#pragma once

// Core value types: intervals, trajectories, interval trajectories, labels,
// datasets, predicates and predicate grammars.
//
// All types are immutable after construction and cheap to copy or share
// between threads.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uastl {

/// Robustness values live on the extended real line.
using ExtendedReal = double;

inline constexpr ExtendedReal kPlusInf = std::numeric_limits<double>::infinity();
inline constexpr ExtendedReal kMinusInf = -std::numeric_limits<double>::infinity();

/// A closed interval [lo, hi] on one signal dimension.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (std::isnan(lo) || std::isnan(hi) || lo > hi)
            throw std::invalid_argument("Interval: requires lo <= hi");
    }

    bool contains(double v) const { return lo <= v && v <= hi; }
    bool degenerate() const { return lo == hi; }
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }

    /// Closed intervals intersect when they share at least one point;
    /// touching endpoints count as intersection.
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }

    /// Distance between two disjoint intervals (0 if they intersect).
    double gap(const Interval& o) const {
        if (intersects(o)) return 0.0;
        return lo > o.hi ? lo - o.hi : o.lo - hi;
    }

    bool operator==(const Interval&) const = default;
};

/// A finite trajectory: one real vector per timestep t_0..t_J.
class Trajectory {
public:
    Trajectory() = default;
    explicit Trajectory(std::vector<std::vector<double>> values)
        : values_(std::move(values)) {
        if (values_.empty())
            throw std::invalid_argument("Trajectory: must be nonempty");
        const std::size_t n = values_[0].size();
        if (n == 0) throw std::invalid_argument("Trajectory: zero-dimensional state");
        for (const auto& row : values_)
            if (row.size() != n)
                throw std::invalid_argument("Trajectory: ragged dimensions");
    }

    std::size_t length() const { return values_.size(); }
    std::size_t dims() const { return values_[0].size(); }
    /// Index of the last timestep, J.
    std::size_t last_index() const { return values_.size() - 1; }

    const std::vector<double>& at(std::size_t j) const { return values_.at(j); }
    const std::vector<std::vector<double>>& values() const { return values_; }

    bool operator==(const Trajectory&) const = default;

private:
    std::vector<std::vector<double>> values_;
};

/// An interval trajectory: one axis-aligned box per timestep. It denotes the
/// set of all trajectories that stay componentwise inside the boxes.
class IntervalTrajectory {
public:
    IntervalTrajectory() = default;
    explicit IntervalTrajectory(std::vector<std::vector<Interval>> boxes)
        : boxes_(std::move(boxes)) {
        if (boxes_.empty())
            throw std::invalid_argument("IntervalTrajectory: must be nonempty");
        const std::size_t n = boxes_[0].size();
        if (n == 0) throw std::invalid_argument("IntervalTrajectory: zero-dimensional");
        for (const auto& row : boxes_)
            if (row.size() != n)
                throw std::invalid_argument("IntervalTrajectory: ragged dimensions");
    }

    /// The degenerate interval trajectory containing exactly one member.
    static IntervalTrajectory point(const Trajectory& t) {
        std::vector<std::vector<Interval>> boxes(t.length());
        for (std::size_t j = 0; j < t.length(); ++j)
            for (double v : t.at(j)) boxes[j].emplace_back(v, v);
        return IntervalTrajectory(std::move(boxes));
    }

    std::size_t length() const { return boxes_.size(); }
    std::size_t dims() const { return boxes_[0].size(); }
    std::size_t last_index() const { return boxes_.size() - 1; }

    const std::vector<Interval>& at(std::size_t j) const { return boxes_.at(j); }
    const std::vector<std::vector<Interval>>& boxes() const { return boxes_; }

    bool contains(const Trajectory& t) const {
        if (t.length() != length() || t.dims() != dims()) return false;
        for (std::size_t j = 0; j < length(); ++j)
            for (std::size_t k = 0; k < dims(); ++k)
                if (!boxes_[j][k].contains(t.at(j)[k])) return false;
        return true;
    }

    bool operator==(const IntervalTrajectory&) const = default;

private:
    std::vector<std::vector<Interval>> boxes_;
};

/// Classification label: +1 desired behavior, -1 undesired behavior.
enum class Label : int { Desired = +1, Undesired = -1 };

inline int label_sign(Label l) { return static_cast<int>(l); }
inline Label label_from_int(int v) {
    if (v == 1) return Label::Desired;
    if (v == -1) return Label::Undesired;
    throw std::invalid_argument("Label: must be +1 or -1");
}

/// Labeled set of interval trajectories, all sharing dimension and length.
class LabeledDataset {
public:
    using Entry = std::pair<IntervalTrajectory, Label>;

    LabeledDataset() = default;
    explicit LabeledDataset(std::vector<Entry> entries) {
        for (auto& e : entries) push_back(std::move(e.first), e.second);
    }

    void push_back(IntervalTrajectory it, Label l) {
        if (!entries_.empty() &&
            (it.dims() != dims() || it.length() != length()))
            throw std::invalid_argument("LabeledDataset: shape mismatch");
        entries_.emplace_back(std::move(it), l);
    }

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    std::size_t dims() const { return entries_.at(0).first.dims(); }
    std::size_t length() const { return entries_.at(0).first.length(); }

    const Entry& operator[](std::size_t i) const { return entries_.at(i); }
    const std::vector<Entry>& entries() const { return entries_; }

    std::size_t count(Label l) const {
        std::size_t c = 0;
        for (const auto& [it, lab] : entries_) c += (lab == l);
        return c;
    }
    bool has_both_labels() const {
        return count(Label::Desired) > 0 && count(Label::Undesired) > 0;
    }

private:
    std::vector<Entry> entries_;
};

/// Labeled set of point trajectories (the sampling baselines' input).
class PointDataset {
public:
    using Entry = std::pair<Trajectory, Label>;

    PointDataset() = default;
    explicit PointDataset(std::vector<Entry> entries) {
        for (auto& e : entries) push_back(std::move(e.first), e.second);
    }

    void push_back(Trajectory t, Label l) {
        if (!entries_.empty() && (t.dims() != dims() || t.length() != length()))
            throw std::invalid_argument("PointDataset: shape mismatch");
        entries_.emplace_back(std::move(t), l);
    }

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    std::size_t dims() const { return entries_.at(0).first.dims(); }
    std::size_t length() const { return entries_.at(0).first.length(); }

    const Entry& operator[](std::size_t i) const { return entries_.at(i); }
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::vector<Entry> entries_;
};

/// Comparison sense of an atomic predicate.
enum class Sense { Gt, Lt };

inline Sense flip_sense(Sense s) { return s == Sense::Gt ? Sense::Lt : Sense::Gt; }

/// Affine atomic predicate over the state vector. With w the coefficient
/// vector and c the threshold, the predicate holds iff f(x) > 0 where
///   f(x) = <w,x> - c   for sense '>'
///   f(x) = c - <w,x>   for sense '<'
struct Predicate {
    std::vector<double> coeffs;
    double threshold = 0.0;
    Sense sense = Sense::Gt;

    Predicate() = default;
    Predicate(std::vector<double> coeffs_, Sense sense_, double threshold_)
        : coeffs(std::move(coeffs_)), threshold(threshold_), sense(sense_) {
        bool any = false;
        for (double w : coeffs) any |= (w != 0.0);
        if (!any)
            throw std::invalid_argument("Predicate: needs a nonzero coefficient");
    }

    std::size_t dims() const { return coeffs.size(); }

    /// f(x); throws on dimension mismatch.
    double eval(const std::vector<double>& x) const {
        if (x.size() < coeffs.size())
            throw std::invalid_argument("Predicate: state dimension mismatch");
        double dot = 0.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) dot += coeffs[k] * x[k];
        return sense == Sense::Gt ? dot - threshold : threshold - dot;
    }

    /// Extremum of f over an axis-aligned box, attained at a corner chosen
    /// coordinatewise by coefficient sign. Exact for affine f.
    double extremum(const std::vector<Interval>& box, bool maximize) const {
        if (box.size() < coeffs.size())
            throw std::invalid_argument("Predicate: box dimension mismatch");
        // For sense '<' the sign of <w,x> in f flips, so flip the corner pick.
        const bool pick_high = (sense == Sense::Gt) == maximize;
        double dot = 0.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            const double w = coeffs[k];
            dot += w * ((w > 0.0) == pick_high ? box[k].hi : box[k].lo);
        }
        return sense == Sense::Gt ? dot - threshold : threshold - dot;
    }

    bool operator==(const Predicate&) const = default;
};

/// A predicate shape with a free threshold: what the grammar enumerates.
struct PredicateTemplate {
    std::vector<double> coeffs;
    Sense sense = Sense::Gt;

    bool operator==(const PredicateTemplate&) const = default;

    Predicate instantiate(double threshold) const {
        return Predicate(coeffs, sense, threshold);
    }
};

/// Finite predicate alphabet plus the admissible threshold range.
///
/// When threshold_domain is unset, encoders derive a default domain from
/// the data ([global min - 1, global max + 1] per predicate shape). A
/// nonzero threshold_step restricts thresholds to the grid
/// lo, lo+step, lo+2*step, ...
struct PredicateGrammar {
    std::vector<PredicateTemplate> atoms;
    std::vector<Interval> threshold_domain;  // empty, or one Interval per atom
    double threshold_step = 0.0;

    PredicateGrammar() = default;
    explicit PredicateGrammar(std::vector<PredicateTemplate> atoms_)
        : atoms(std::move(atoms_)) {
        if (atoms.empty())
            throw std::invalid_argument("PredicateGrammar: needs at least one atom");
    }

    std::size_t size() const { return atoms.size(); }

    /// Index of the matching atom, or -1.
    int find(const std::vector<double>& coeffs, Sense sense) const {
        for (std::size_t q = 0; q < atoms.size(); ++q)
            if (atoms[q].sense == sense && atoms[q].coeffs == coeffs)
                return static_cast<int>(q);
        return -1;
    }

    /// The predicate shapes used throughout the experiments: per-dimension
    /// x^k <> c, and for 2-D data also x^1+x^2 <> c and x^1-x^2 <> c.
    static PredicateGrammar standard(std::size_t dims) {
        if (dims == 0)
            throw std::invalid_argument("PredicateGrammar: dims must be positive");
        std::vector<PredicateTemplate> atoms;
        auto both = [&](std::vector<double> w) {
            atoms.push_back({w, Sense::Gt});
            atoms.push_back({std::move(w), Sense::Lt});
        };
        for (std::size_t k = 0; k < dims; ++k) {
            std::vector<double> w(dims, 0.0);
            w[k] = 1.0;
            both(w);
        }
        if (dims >= 2) {
            std::vector<double> sum(dims, 0.0), diff(dims, 0.0);
            sum[0] = 1.0; sum[1] = 1.0;
            diff[0] = 1.0; diff[1] = -1.0;
            both(sum);
            both(diff);
        }
        return PredicateGrammar(std::move(atoms));
    }
};

}  // namespace uastl
