#pragma once

// Piecewise-linear functions of a single real variable on a closed domain.
//
// Objectives built from the robustness recursion are min/max combinations of
// affine functions of one predicate threshold, so the exact maximum lies at
// a vertex. Representing the function explicitly gives an exact 1-D
// optimizer: no grid, no unimodality assumption.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace uastl {

class Piecewise {
public:
    /// Constant function on [lo, hi].
    static Piecewise constant(double lo, double hi, double value) {
        return Piecewise(lo, hi, {lo, hi}, {value, value});
    }

    /// slope * x + intercept on [lo, hi].
    static Piecewise affine(double lo, double hi, double slope, double intercept) {
        return Piecewise(lo, hi, {lo, hi}, {slope * lo + intercept, slope * hi + intercept});
    }

    /// The identity, f(x) = x.
    static Piecewise identity(double lo, double hi) { return affine(lo, hi, 1.0, 0.0); }

    double lo() const { return xs_.front(); }
    double hi() const { return xs_.back(); }
    const std::vector<double>& knots() const { return xs_; }

    double eval(double x) const {
        if (x <= xs_.front()) return ys_.front();
        if (x >= xs_.back()) return ys_.back();
        auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - xs_.begin());
        const double x0 = xs_[i - 1], x1 = xs_[i];
        const double y0 = ys_[i - 1], y1 = ys_[i];
        if (x1 == x0) return y0;
        if (std::isinf(y0) || std::isinf(y1)) return y0;  // segments with inf are flat
        const double t = (x - x0) / (x1 - x0);
        return y0 + t * (y1 - y0);
    }

    Piecewise negate() const {
        Piecewise r = *this;
        for (double& y : r.ys_) y = -y;
        return r;
    }

    Piecewise add_constant(double c) const {
        Piecewise r = *this;
        for (double& y : r.ys_) {
            if (!std::isinf(y)) y += c;
        }
        return r;
    }

    friend Piecewise pw_add(const Piecewise& a, const Piecewise& b) {
        return combine(a, b, [](double x, double y) { return x + y; }, false);
    }
    friend Piecewise pw_min(const Piecewise& a, const Piecewise& b) {
        return combine(a, b, [](double x, double y) { return std::min(x, y); }, true);
    }
    friend Piecewise pw_max(const Piecewise& a, const Piecewise& b) {
        return combine(a, b, [](double x, double y) { return std::max(x, y); }, true);
    }

    struct Maximum {
        double value;
        double arg;  // plateau midpoint when the maximum is attained on a segment
    };

    /// Exact maximum over the domain. When the maximum is attained on a
    /// plateau the reported argument is the midpoint of the first maximal
    /// plateau, which picks the interior optimum of peaked objectives.
    Maximum maximize() const {
        double best = -std::numeric_limits<double>::infinity();
        for (double y : ys_) best = std::max(best, y);
        const double width = std::max(std::abs(xs_.back()), std::abs(xs_.front()));
        const double ytol = tolerance(best, width);
        // First maximal run of knots attaining the maximum.
        std::size_t begin = ys_.size(), end = ys_.size();
        for (std::size_t i = 0; i < ys_.size(); ++i) {
            if (ys_[i] >= best - ytol) {
                if (begin == ys_.size()) begin = i;
                end = i;
            } else if (begin != ys_.size()) {
                break;
            }
        }
        return {best, 0.5 * (xs_[begin] + xs_[end])};
    }

private:
    Piecewise(double lo, double hi, std::vector<double> xs, std::vector<double> ys)
        : xs_(std::move(xs)), ys_(std::move(ys)) {
        if (lo > hi) throw std::invalid_argument("Piecewise: empty domain");
    }

    static double tolerance(double scale, double width) {
        double s = std::max({std::abs(scale), width, 1.0});
        if (std::isinf(s)) s = 1.0;
        return 1e-12 * s;
    }

    template <typename F>
    static Piecewise combine(const Piecewise& a, const Piecewise& b, F&& f, bool crossings) {
        if (a.lo() != b.lo() || a.hi() != b.hi())
            throw std::invalid_argument("Piecewise: domain mismatch");
        // Merge knot sets.
        std::vector<double> xs;
        xs.reserve(a.xs_.size() + b.xs_.size());
        std::merge(a.xs_.begin(), a.xs_.end(), b.xs_.begin(), b.xs_.end(),
                   std::back_inserter(xs));
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        // For min/max, insert the intersection point of each segment pair.
        if (crossings) {
            std::vector<double> extra;
            for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
                const double x0 = xs[i], x1 = xs[i + 1];
                const double d0 = a.eval(x0) - b.eval(x0);
                const double d1 = a.eval(x1) - b.eval(x1);
                if (std::isnan(d0) || std::isnan(d1) || std::isinf(d0) || std::isinf(d1))
                    continue;
                if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
                    const double t = d0 / (d0 - d1);
                    extra.push_back(x0 + t * (x1 - x0));
                }
            }
            xs.insert(xs.end(), extra.begin(), extra.end());
            std::sort(xs.begin(), xs.end());
            xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        }
        std::vector<double> ys(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = f(a.eval(xs[i]), b.eval(xs[i]));
        const double lo = xs.front(), hi = xs.back();
        return Piecewise(lo, hi, std::move(xs), std::move(ys));
    }

    std::vector<double> xs_, ys_;
};

}  // namespace uastl
