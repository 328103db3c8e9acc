#include "ctmax/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ctmax {

namespace {

constexpr Index kRowBlock = 256;
/// Phase rotations are re-anchored with an exact polar() every this many nodes.
constexpr Index kAnchorEvery = 256;

RealVector abs_power(const RealVector& xi, double a) {
    return xi.unaryExpr([a](double v) { return std::pow(std::abs(v), a); });
}

void require_odd(const FrequencyGrid& grid) {
    if (grid.count() % 2 == 0)
        throw DomainError("frequency grid needs an odd node count for the halving check");
}

}  // namespace

ComplexVector evolution_multiplier(const FrequencyGrid& grid, const EvolutionParams& params, double t) {
    const RealVector p = abs_power(grid.nodes(), params.a);
    const double sigma = params.sigma(t);
    ComplexVector m(p.size());
    for (Index j = 0; j < p.size(); ++j) m(j) = std::polar(std::exp(-sigma * p(j)), t * p(j));
    return m;
}

double phase_derivative_bound(const FrequencyProfile& profile, const EvolutionParams& params, double t,
                              double x_extent, const QuadratureOptions& opts) {
    const auto& grid = profile.grid();
    const RealVector mod = profile.values().cwiseAbs();
    const double peak = mod.maxCoeff();
    const double sigma = params.sigma(t);
    double xi_eff = 0.0;
    if (peak > 0.0) {
        for (Index j = 0; j < grid.count(); ++j) {
            const double xi = std::abs(grid.node(j));
            const double damped = mod(j) * std::exp(-sigma * std::pow(xi, params.a));
            if (damped > opts.amplitude_cutoff * peak) xi_eff = std::max(xi_eff, xi);
        }
    }
    return std::abs(t) * params.a * std::pow(xi_eff, params.a - 1.0) + std::abs(x_extent);
}

void check_resolution(const FrequencyProfile& profile, const EvolutionParams& params, double t,
                      double x_extent, const QuadratureOptions& opts) {
    const double bound = phase_derivative_bound(profile, params, t, x_extent, opts);
    const double h = profile.grid().spacing();
    if (h * bound > opts.phase_step) {
        std::ostringstream msg;
        msg << "frequency step " << h << " violates step * (t*a*Xi^(a-1) + X) <= " << opts.phase_step
            << ": phase derivative bound is " << bound << " at t = " << t << " (X = " << x_extent
            << "), step must be <= " << opts.phase_step / bound;
        throw ResolutionError(msg.str());
    }
}

HalvingCertificate evolve_blocks(const FrequencyProfile& profile, const EvolutionParams& params,
                                 std::span<const double> times, const SpatialGrid& xs,
                                 const QuadratureOptions& opts, const BlockSink& sink) {
    const auto& grid = profile.grid();
    require_odd(grid);
    const Index n = grid.count();
    const auto nt = static_cast<Index>(times.size());
    const double h = grid.spacing();
    const double x_extent = xs.max_abs();
    for (double t : times) check_resolution(profile, params, t, x_extent, opts);

    const RealVector xi = grid.nodes();
    const RealVector p = abs_power(xi, params.a);
    const RealVector w = trapezoid_weights(n, h);
    const RealVector wc = coarse_trapezoid_weights(n, h);
    const auto even = Eigen::seq(0, n - 1, 2);

    ComplexMatrix fine_cols(n, nt);
    for (Index k = 0; k < nt; ++k) {
        const double t = times[static_cast<std::size_t>(k)];
        const double sigma = params.sigma(t);
        for (Index j = 0; j < n; ++j)
            fine_cols(j, k) = w(j) * profile.values()(j) * std::polar(std::exp(-sigma * p(j)), t * p(j));
    }
    ComplexMatrix coarse_cols = fine_cols(even, Eigen::all);
    for (Index k = 0; k < nt; ++k)
        for (Index j = 0, c = 0; j < n; j += 2, ++c) coarse_cols(c, k) *= wc(j) / w(j);

    RealVector col_peak = RealVector::Zero(nt);
    RealVector col_dev = RealVector::Zero(nt);
    ComplexMatrix phases;
    for (Index row0 = 0; row0 < xs.count(); row0 += kRowBlock) {
        const Index rows = std::min(kRowBlock, xs.count() - row0);
        phases.resize(rows, n);
        ComplexVector step(rows);
        for (Index r = 0; r < rows; ++r) step(r) = std::polar(1.0, xs.node(row0 + r) * h);
        for (Index j = 0; j < n; ++j) {
            if (j % kAnchorEvery == 0)
                for (Index r = 0; r < rows; ++r) phases(r, j) = std::polar(1.0, xs.node(row0 + r) * xi(j));
            else
                phases.col(j) = phases.col(j - 1).cwiseProduct(step);
        }
        const ComplexMatrix fine = phases * fine_cols;
        const Eigen::Map<const ComplexMatrix, 0, Eigen::OuterStride<>> even_phases(
            phases.data(), rows, coarse_cols.rows(), Eigen::OuterStride<>(2 * rows));
        const ComplexMatrix coarse = even_phases * coarse_cols;
        col_peak = col_peak.cwiseMax(fine.cwiseAbs().colwise().maxCoeff().transpose());
        col_dev = col_dev.cwiseMax((fine - coarse).cwiseAbs().colwise().maxCoeff().transpose());
        sink(row0, fine);
    }

    HalvingCertificate cert;
    cert.rtol = opts.rtol;
    cert.nodes = n;
    const double floor = opts.scale_floor * profile.l1_mass();
    for (Index k = 0; k < nt; ++k) {
        const double scale = std::max(col_peak(k), floor);
        const bool ok = col_dev(k) <= opts.rtol * scale;
        cert.passed = cert.passed && ok;
        if (scale > 0.0 && col_dev(k) / scale >= cert.relative()) {
            cert.max_deviation = col_dev(k);
            cert.scale = scale;
        }
    }
    return cert;
}

HalvingCertificate evolve_certified(const FrequencyProfile& profile, const EvolutionParams& params,
                                    std::span<const double> times, const SpatialGrid& xs,
                                    const QuadratureOptions& opts, const std::function<void()>& reset,
                                    const BlockSink& sink) {
    FrequencyProfile current = profile;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 0) reset();
        HalvingCertificate cert = evolve_blocks(current, params, times, xs, opts, sink);
        cert.refinements = attempt;
        if (cert.passed) return cert;
        const bool can_refine = current.refinable() && attempt < opts.max_refinements &&
                                current.grid().refined().count() <= opts.max_nodes;
        if (!can_refine) {
            if (!opts.require_certificate) return cert;
            std::ostringstream msg;
            msg << "halving check failed: deviation " << cert.max_deviation << " exceeds " << opts.rtol
                << " * " << cert.scale << " with " << current.grid().count() << " nodes";
            throw CertificateError(msg.str());
        }
        current = current.refined();
    }
}

Certified<ComplexMatrix> evolve_ladder(const FrequencyProfile& profile, const EvolutionParams& params,
                                       std::span<const double> times, const SpatialGrid& xs,
                                       const QuadratureOptions& opts) {
    ComplexMatrix out(xs.count(), static_cast<Index>(times.size()));
    auto cert = evolve_certified(
        profile, params, times, xs, opts, [] {},
        [&](Index row0, const ComplexMatrix& block) { out.middleRows(row0, block.rows()) = block; });
    return {std::move(out), cert};
}

Certified<SpatialField> synthesize(const FrequencyProfile& profile, const SpatialGrid& xs,
                                   const QuadratureOptions& opts) {
    const double t0 = 0.0;
    auto res = evolve_ladder(profile, EvolutionParams::schrodinger_type(2.0), std::span(&t0, 1), xs, opts);
    return {SpatialField(xs, res.value.col(0)), res.certificate};
}

Certified<SpatialField> evaluate_evolution(const FrequencyProfile& profile, const EvolutionParams& params,
                                           double t, const SpatialGrid& xs, const QuadratureOptions& opts) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("evolution time must lie in (0, 1)");
    auto res = evolve_ladder(profile, params, std::span(&t, 1), xs, opts);
    return {SpatialField(xs, res.value.col(0)), res.certificate};
}

}  // namespace ctmax
