#pragma once

#include <vector>

#include "ctmax/types.hpp"

namespace ctmax {

/// Uniform grid of `count` nodes on [lo, hi], both endpoints included.
class UniformGrid {
public:
    UniformGrid(double lo, double hi, Index count);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    Index count() const { return count_; }
    double spacing() const { return (hi_ - lo_) / static_cast<double>(count_ - 1); }
    double length() const { return hi_ - lo_; }

    /// Node j, computed so that the midpoint of a symmetric odd grid is exactly 0.
    double node(Index j) const {
        return lo_ + (hi_ - lo_) * (static_cast<double>(j) / static_cast<double>(count_ - 1));
    }
    RealVector nodes() const;

    bool is_symmetric() const { return lo_ == -hi_; }
    double max_abs() const;

    /// Index of the node closest to `x` (clamped to the grid).
    Index nearest(double x) const;

    friend bool operator==(const UniformGrid&, const UniformGrid&) = default;

private:
    double lo_;
    double hi_;
    Index count_;
};

/// Frequency grid; xi is the integration variable of every propagator.
class FrequencyGrid : public UniformGrid {
public:
    using UniformGrid::UniformGrid;

    static FrequencyGrid symmetric(double half_width, Index count) {
        return {-half_width, half_width, count};
    }
    /// Same interval with every cell halved (2(count-1)+1 nodes).
    FrequencyGrid refined() const { return {lo(), hi(), 2 * (count() - 1) + 1}; }
};

class SpatialGrid : public UniformGrid {
public:
    using UniformGrid::UniformGrid;

    static SpatialGrid symmetric(double half_width, Index count) {
        return {-half_width, half_width, count};
    }
    SpatialGrid refined() const { return {lo(), hi(), 2 * (count() - 1) + 1}; }
};

/// Composite trapezoid weights for n nodes of spacing h.
template <typename Scalar>
Vector<Scalar> trapezoid_weights(Index n, Scalar h) {
    Vector<Scalar> w = Vector<Scalar>::Constant(n, h);
    if (n > 0) {
        w(0) = h / Scalar(2);
        w(n - 1) = h / Scalar(2);
    }
    return w;
}

/// Trapezoid weights of the halved grid (every other node), laid out on the
/// fine grid: odd nodes carry weight 0. Requires an odd node count.
template <typename Scalar>
Vector<Scalar> coarse_trapezoid_weights(Index n, Scalar h) {
    Vector<Scalar> w = Vector<Scalar>::Zero(n);
    for (Index j = 0; j < n; j += 2) w(j) = Scalar(2) * h;
    w(0) = h;
    w(n - 1) = h;
    return w;
}

/// Closed interval or the whole grid.
struct Region {
    bool whole = true;
    double lo = 0.0;
    double hi = 0.0;

    static Region whole_line() { return {}; }
    static Region interval(double lo, double hi);
};

/// Contiguous node range [first, last] of `grid` covered by `region`.
/// Throws DomainError if the region leaves the grid.
struct NodeRange {
    Index first;
    Index last;
    Index size() const { return last - first + 1; }
};
NodeRange node_range(const UniformGrid& grid, const Region& region);

enum class LadderScale { geometric, linear, explicit_values };

/// Strictly increasing times in (0, 1), the discrete stand-in for sup over t.
class TimeLadder {
public:
    static TimeLadder geometric(double t_min, double t_max, Index count);
    static TimeLadder linear(double t_min, double t_max, Index count);
    /// Sorted, deduplicated copy of `times`.
    static TimeLadder from_values(std::vector<double> times);
    /// Default ladder used by sharpness experiments.
    static TimeLadder standard() { return geometric(1e-4, 1.0 - 1e-4, 512); }

    const std::vector<double>& times() const { return times_; }
    Index size() const { return static_cast<Index>(times_.size()); }
    double t_min() const { return times_.front(); }
    double t_max() const { return times_.back(); }
    LadderScale scale() const { return scale_; }

    /// Union with extra times (result has explicit scale).
    TimeLadder merged(const std::vector<double>& extra) const;
    /// Same kind of ladder with twice the count (for geometric/linear).
    TimeLadder doubled() const;

private:
    TimeLadder(std::vector<double> times, LadderScale scale);
    std::vector<double> times_;
    LadderScale scale_;
};

}  // namespace ctmax
