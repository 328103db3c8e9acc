#include "ctmax/maximal.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ctmax/bump.hpp"
#include "ctmax/norms.hpp"
#include "ctmax/propagator.hpp"

namespace ctmax {

MaximalField maximal_field(const FrequencyProfile& profile, const EvolutionParams& params,
                           const TimeLadder& ladder, const SpatialGrid& xs, const QuadratureOptions& opts,
                           std::span<const Index> track) {
    const Index nx = xs.count();
    const Index nt = ladder.size();
    if (!track.empty() && static_cast<Index>(track.size()) != nx)
        throw DomainError("track needs one ladder index per spatial node");
    for (Index k : track)
        if (k >= nt) throw DomainError("tracked ladder index out of range");

    MaximalField out{xs, RealVector::Zero(nx), RealVector::Zero(nx), std::vector<Index>(static_cast<std::size_t>(nx), 0),
                     RealVector(), {}};
    if (!track.empty()) out.tracked = RealVector::Constant(nx, std::numeric_limits<double>::quiet_NaN());

    const auto& times = ladder.times();
    auto sink = [&](Index row0, const ComplexMatrix& block) {
        for (Index r = 0; r < block.rows(); ++r) {
            const Index i = row0 + r;
            double best = -1.0;
            Index arg = 0;
            for (Index k = 0; k < nt; ++k) {
                const double m = std::abs(block(r, k));
                if (m > best) {
                    best = m;
                    arg = k;
                }
            }
            out.sup_values(i) = best;
            out.argmax_index[static_cast<std::size_t>(i)] = arg;
            out.argmax_t(i) = times[static_cast<std::size_t>(arg)];
            if (!track.empty() && track[static_cast<std::size_t>(i)] >= 0)
                out.tracked(i) = std::abs(block(r, track[static_cast<std::size_t>(i)]));
        }
    };
    out.certificate = evolve_certified(profile, params, times, xs, opts, [] {}, sink);
    return out;
}

Certified<SpatialField> linearized_evolution(const FrequencyProfile& profile, const EvolutionParams& params,
                                             const RealVector& t_map, double N, const SpatialGrid& xs,
                                             const QuadratureOptions& opts) {
    if (t_map.size() != xs.count()) throw DomainError("t_map needs one time per spatial node");
    for (Index i = 0; i < t_map.size(); ++i)
        if (!(t_map(i) > 0.0 && t_map(i) < 1.0)) throw DomainError("t_map values must lie in (0, 1)");
    if (!(N > 0.0)) throw DomainError("cutoff scale N must be positive");

    const Bump eta(1.0);
    auto cut = [&](const FrequencyProfile& p) {
        if (p.refinable()) {
            auto src = p.source();
            return FrequencyProfile::sample(p.grid(), [src, eta, N](double xi) { return src(xi) * eta(xi / N); });
        }
        ComplexVector v = p.values();
        for (Index j = 0; j < v.size(); ++j) v(j) *= eta(p.grid().node(j) / N);
        return FrequencyProfile(p.grid(), std::move(v));
    };

    FrequencyProfile current = cut(profile);
    for (int attempt = 0;; ++attempt) {
        const auto& grid = current.grid();
        if (grid.count() % 2 == 0) throw DomainError("frequency grid needs an odd node count for the halving check");
        const Index n = grid.count();
        for (Index i = 0; i < xs.count(); ++i) check_resolution(current, params, t_map(i), xs.node(i), opts);

        const RealVector xi = grid.nodes();
        const RealVector p = xi.unaryExpr([&](double v) { return std::pow(std::abs(v), params.a); });
        const RealVector w = trapezoid_weights(n, grid.spacing());
        const RealVector wc = coarse_trapezoid_weights(n, grid.spacing());
        const ComplexVector& f = current.values();

        ComplexVector vals(xs.count());
        double peak = 0.0, dev = 0.0;
        for (Index i = 0; i < xs.count(); ++i) {
            const double t = t_map(i), x = xs.node(i), sigma = params.sigma(t);
            Complex fine = 0.0, coarse = 0.0;
            for (Index j = 0; j < n; ++j) {
                if (f(j) == 0.0) continue;
                const Complex term = f(j) * std::polar(std::exp(-sigma * p(j)), t * p(j) + x * xi(j));
                fine += w(j) * term;
                coarse += wc(j) * term;
            }
            const double outer = eta(x / N);
            vals(i) = outer * fine;
            peak = std::max(peak, std::abs(vals(i)));
            dev = std::max(dev, outer * std::abs(fine - coarse));
        }

        HalvingCertificate cert;
        cert.rtol = opts.rtol;
        cert.nodes = n;
        cert.refinements = attempt;
        cert.max_deviation = dev;
        cert.scale = std::max(peak, opts.scale_floor * current.l1_mass());
        cert.passed = dev <= opts.rtol * cert.scale;
        if (cert.passed) return {SpatialField(xs, std::move(vals)), cert};
        const bool can_refine = current.refinable() && attempt < opts.max_refinements &&
                                grid.refined().count() <= opts.max_nodes;
        if (!can_refine) {
            if (!opts.require_certificate) return {SpatialField(xs, std::move(vals)), cert};
            std::ostringstream msg;
            msg << "halving check failed for the linearized operator: deviation " << dev << " with " << n
                << " nodes";
            throw CertificateError(msg.str());
        }
        current = current.refined();
    }
}

double ratio_statistic(const MaximalField& field, double sobolev, const Region& region, NormKind kind) {
    if (!(sobolev > 0.0)) throw PreconditionError("ratio statistic needs a positive Sobolev norm");
    const double num = kind == NormKind::strong ? l2_norm(field.base, field.sup_values, region).value
                                                : weak_l2_quasinorm(field.base, field.sup_values, region);
    return num / sobolev;
}

double ratio_statistic(const FrequencyProfile& profile, const EvolutionParams& params, const TimeLadder& ladder,
                       const SpatialGrid& xs, double s, const Region& region, NormKind kind,
                       const QuadratureOptions& opts) {
    const double sob = sobolev_norm(profile, s, SobolevKind::inhomogeneous).value;
    if (!(sob > 0.0)) throw PreconditionError("ratio statistic needs a positive Sobolev norm");
    return ratio_statistic(maximal_field(profile, params, ladder, xs, opts), sob, region, kind);
}

LadderCertificate ladder_refinement_check(const FrequencyProfile& profile, const EvolutionParams& params,
                                          const TimeLadder& ladder, const SpatialGrid& xs, const Region& region,
                                          double tolerance, const QuadratureOptions& opts) {
    LadderCertificate c;
    c.tolerance = tolerance;
    c.l2 = l2_norm(xs, maximal_field(profile, params, ladder, xs, opts).sup_values, region).value;
    c.l2_doubled = l2_norm(xs, maximal_field(profile, params, ladder.doubled(), xs, opts).sup_values, region).value;
    c.relative_change = c.l2_doubled > 0.0 ? std::abs(c.l2_doubled - c.l2) / c.l2_doubled : 0.0;
    c.passed = c.relative_change < tolerance;
    return c;
}

}  // namespace ctmax
