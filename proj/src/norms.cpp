#include "ctmax/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace ctmax {

namespace {

/// Trapezoid sum of y over nodes first, first+stride, ..., always ending at last.
double strided_trapezoid(const RealVector& y, Index first, Index last, Index stride, double h) {
    double sum = 0.0;
    Index prev = first;
    for (Index j = first + stride;; j += stride) {
        const Index cur = std::min(j, last);
        sum += 0.5 * static_cast<double>(cur - prev) * h * (y(prev) + y(cur));
        prev = cur;
        if (cur == last) break;
    }
    return sum;
}

}  // namespace

Certified<double> sobolev_norm(const FrequencyProfile& profile, double s, SobolevKind kind,
                               const QuadratureOptions& opts) {
    const auto& grid0 = profile.grid();
    if (kind == SobolevKind::homogeneous && s < 0.0 && grid0.lo() <= 0.0 && grid0.hi() >= 0.0)
        throw DomainError("homogeneous Sobolev norm with s < 0 needs a frequency grid away from 0");

    FrequencyProfile current = profile;
    for (int attempt = 0;; ++attempt) {
        const auto& grid = current.grid();
        const Index n = grid.count();
        RealVector y(n);
        for (Index j = 0; j < n; ++j) {
            const double xi = grid.node(j);
            const double weight = kind == SobolevKind::homogeneous ? std::pow(std::abs(xi), 2.0 * s)
                                                                   : std::pow(1.0 + xi * xi, s);
            y(j) = std::norm(current.values()(j)) * weight;
        }
        const double fine = std::sqrt(strided_trapezoid(y, 0, n - 1, 1, grid.spacing()));
        const double coarse = std::sqrt(strided_trapezoid(y, 0, n - 1, 2, grid.spacing()));

        HalvingCertificate cert;
        cert.rtol = opts.rtol;
        cert.nodes = n;
        cert.refinements = attempt;
        cert.max_deviation = std::abs(fine - coarse);
        cert.scale = fine;
        cert.passed = cert.max_deviation <= opts.rtol * fine;
        if (cert.passed) return {fine, cert};
        const bool can_refine = current.refinable() && attempt < opts.max_refinements &&
                                grid.refined().count() <= opts.max_nodes;
        if (!can_refine) {
            if (opts.require_certificate)
                throw CertificateError("halving check failed for Sobolev norm");
            return {fine, cert};
        }
        current = current.refined();
    }
}

Certified<double> l2_norm(const SpatialGrid& grid, const RealVector& modulus, const Region& region) {
    const NodeRange r = node_range(grid, region);
    const RealVector sq = modulus.array().square();
    const double fine = std::sqrt(strided_trapezoid(sq, r.first, r.last, 1, grid.spacing()));
    HalvingCertificate cert;
    cert.rtol = QuadratureOptions::for_norms().rtol;
    cert.nodes = r.size();
    if (r.size() >= 3) {
        const double coarse = std::sqrt(strided_trapezoid(sq, r.first, r.last, 2, grid.spacing()));
        cert.max_deviation = std::abs(fine - coarse);
        cert.scale = fine;
        cert.passed = cert.max_deviation <= cert.rtol * fine;
    }
    return {fine, cert};
}

double weak_l2_quasinorm(const SpatialGrid& grid, const RealVector& modulus, const Region& region) {
    const NodeRange r = node_range(grid, region);
    const double h = grid.spacing();
    std::vector<Index> order(static_cast<std::size_t>(r.size()));
    std::iota(order.begin(), order.end(), r.first);
    std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return modulus(i) > modulus(j); });
    double measure = 0.0;
    double best = 0.0;
    for (Index i : order) {
        measure += (i == r.first || i == r.last) ? 0.5 * h : h;
        best = std::max(best, modulus(i) * std::sqrt(measure));
    }
    return best;
}

double tail_mass_fraction(const SpatialGrid& grid, const RealVector& modulus) {
    const Index n = grid.count();
    const Index m = std::max<Index>(1, n / 20);
    const RealVector w = trapezoid_weights(n, grid.spacing());
    const RealVector mass = w.cwiseProduct(modulus.cwiseAbs2());
    const double total = mass.sum();
    if (total <= 0.0) return 0.0;
    return (mass.head(m).sum() + mass.tail(m).sum()) / total;
}

}  // namespace ctmax
