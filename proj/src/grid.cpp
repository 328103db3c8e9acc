#include "ctmax/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ctmax {

UniformGrid::UniformGrid(double lo, double hi, Index count) : lo_(lo), hi_(hi), count_(count) {
    if (count < 2) throw DomainError("grid needs at least 2 nodes");
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi)) {
        std::ostringstream msg;
        msg << "grid bounds must satisfy lo < hi, got [" << lo << ", " << hi << "]";
        throw DomainError(msg.str());
    }
}

RealVector UniformGrid::nodes() const {
    RealVector out(count_);
    for (Index j = 0; j < count_; ++j) out(j) = node(j);
    return out;
}

double UniformGrid::max_abs() const { return std::max(std::abs(lo_), std::abs(hi_)); }

Index UniformGrid::nearest(double x) const {
    const double pos = std::round((x - lo_) / spacing());
    return static_cast<Index>(std::clamp(pos, 0.0, static_cast<double>(count_ - 1)));
}

Region Region::interval(double lo, double hi) {
    if (!(lo < hi)) throw DomainError("region must satisfy lo < hi");
    return {false, lo, hi};
}

NodeRange node_range(const UniformGrid& grid, const Region& region) {
    if (region.whole) return {0, grid.count() - 1};
    const double h = grid.spacing();
    const double slack = 1e-9 * h;
    if (region.lo < grid.lo() - slack || region.hi > grid.hi() + slack) {
        std::ostringstream msg;
        msg << "region [" << region.lo << ", " << region.hi << "] is not covered by grid ["
            << grid.lo() << ", " << grid.hi() << "]";
        throw DomainError(msg.str());
    }
    auto first = static_cast<Index>(std::ceil((region.lo - grid.lo()) / h - 1e-9));
    auto last = static_cast<Index>(std::floor((region.hi - grid.lo()) / h + 1e-9));
    first = std::clamp<Index>(first, 0, grid.count() - 1);
    last = std::clamp<Index>(last, 0, grid.count() - 1);
    if (last <= first) throw DomainError("region contains fewer than two grid nodes");
    return {first, last};
}

TimeLadder::TimeLadder(std::vector<double> times, LadderScale scale)
    : times_(std::move(times)), scale_(scale) {
    if (times_.empty()) throw DomainError("time ladder is empty");
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!(times_[i] > 0.0 && times_[i] < 1.0))
            throw DomainError("time ladder entries must lie in (0, 1)");
        if (i > 0 && !(times_[i] > times_[i - 1]))
            throw DomainError("time ladder must be strictly increasing");
    }
}

TimeLadder TimeLadder::geometric(double t_min, double t_max, Index count) {
    if (count == 1) return {{t_min}, LadderScale::geometric};
    if (!(0.0 < t_min && t_min < t_max && t_max < 1.0) || count < 1)
        throw DomainError("geometric ladder needs 0 < t_min < t_max < 1 and count >= 1");
    std::vector<double> t(static_cast<std::size_t>(count));
    const double ratio = std::log(t_max / t_min);
    for (Index i = 0; i < count; ++i)
        t[static_cast<std::size_t>(i)] = t_min * std::exp(ratio * static_cast<double>(i) / static_cast<double>(count - 1));
    t.front() = t_min;
    t.back() = t_max;
    return {std::move(t), LadderScale::geometric};
}

TimeLadder TimeLadder::linear(double t_min, double t_max, Index count) {
    if (count == 1) return {{t_min}, LadderScale::linear};
    if (!(0.0 < t_min && t_min < t_max && t_max < 1.0) || count < 1)
        throw DomainError("linear ladder needs 0 < t_min < t_max < 1 and count >= 1");
    std::vector<double> t(static_cast<std::size_t>(count));
    for (Index i = 0; i < count; ++i)
        t[static_cast<std::size_t>(i)] = t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(count - 1);
    return {std::move(t), LadderScale::linear};
}

TimeLadder TimeLadder::from_values(std::vector<double> times) {
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return {std::move(times), LadderScale::explicit_values};
}

TimeLadder TimeLadder::merged(const std::vector<double>& extra) const {
    std::vector<double> all = times_;
    all.insert(all.end(), extra.begin(), extra.end());
    return from_values(std::move(all));
}

TimeLadder TimeLadder::doubled() const {
    std::vector<double> out;
    out.reserve(2 * times_.size());
    for (std::size_t i = 0; i < times_.size(); ++i) {
        out.push_back(times_[i]);
        if (i + 1 < times_.size()) {
            const double mid = scale_ == LadderScale::linear ? 0.5 * (times_[i] + times_[i + 1])
                                                             : std::sqrt(times_[i] * times_[i + 1]);
            out.push_back(mid);
        }
    }
    return {std::move(out), scale_};
}

}  // namespace ctmax
