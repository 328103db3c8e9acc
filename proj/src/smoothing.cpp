#include "ctmax/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ctmax/norms.hpp"
#include "ctmax/propagator.hpp"

namespace ctmax {

namespace {

constexpr double kDampingCut = 39.0;

}  // namespace

PathSpec PathSpec::power(double p) {
    std::ostringstream tag;
    tag << "t^" << p;
    return {[p](double t) { return std::pow(t, p); }, tag.str()};
}

PathSpec PathSpec::zero() {
    return {[](double) { return 0.0; }, "0"};
}

void PathSpec::validate(const TimeLadder& ladder) const {
    if (!g) throw DomainError("path is empty");
    for (double t : ladder.times()) {
        const double v = g(t);
        if (!(std::isfinite(v) && v >= 0.0 && v <= 1.0)) {
            std::ostringstream msg;
            msg << "path " << tag << " takes the value " << v << " at t = " << t << ", outside [0, 1]";
            throw DomainError(msg.str());
        }
    }
}

Certified<SpatialField> kernel_K(double a, const SpatialGrid& xs, const KernelOptions& opts) {
    if (!(a > 1.0)) throw DomainError("kernel needs a > 1");
    QuadratureOptions q;
    q.rtol = opts.rtol;
    q.max_refinements = opts.max_refinements;
    const double Xi = std::pow(kDampingCut, 1.0 / a);
    const double X = xs.max_abs();
    const double h = std::min(opts.base_step, 0.999 * q.phase_step / X);
    const auto half = static_cast<Index>(std::ceil(Xi / h));
    auto profile = FrequencyProfile::sample(FrequencyGrid::symmetric(Xi, 2 * half + 1), [a](double xi) {
        return Complex(std::exp(-std::pow(std::abs(xi), a)) / (2.0 * kPi));
    });
    auto res = synthesize(profile, xs, q);
    res.value.values = res.value.values.real().cast<Complex>();
    return res;
}

Certified<SpatialField> dilated_kernel(double a, double u, const SpatialGrid& xs, const KernelOptions& opts) {
    if (!(u > 0.0)) throw DomainError("dilation needs u > 0");
    auto k = kernel_K(a, SpatialGrid(xs.lo() / u, xs.hi() / u, xs.count()), opts);
    return {SpatialField(xs, k.value.values / u), k.certificate};
}

SpatialField dilate(const std::function<double(double)>& k, double t, const SpatialGrid& xs) {
    if (!(t > 0.0)) throw DomainError("dilation needs t > 0");
    ComplexVector v(xs.count());
    for (Index i = 0; i < xs.count(); ++i) v(i) = k(xs.node(i) / t) / t;
    return {xs, v};
}

Certified<ComplexMatrix> evolve_along_path(const FrequencyProfile& profile, double a, const PathSpec& path,
                                           const TimeLadder& ladder, const SpatialGrid& xs,
                                           const QuadratureOptions& opts) {
    path.validate(ladder);
    return evolve_ladder(profile, EvolutionParams::along_path(a, path.g), ladder.times(), xs, opts);
}

Certified<RealVector> kernel_lattice(double a, double u, const SpatialGrid& xs, double extent,
                                     const KernelOptions& opts) {
    if (!(u > 0.0)) throw DomainError("dilation needs u > 0");
    const double dx = xs.spacing();
    const Index m = std::max<Index>(1, std::min<Index>(xs.count() - 1, static_cast<Index>(std::floor(extent * u / dx))));
    const double reach = static_cast<double>(m) * dx / u;
    auto k = kernel_K(a, SpatialGrid(-reach, reach, 2 * m + 1), opts);
    return {RealVector(k.value.values.real() / u), k.certificate};
}

double kernel_average_constant(const RealVector& lattice, double dx) {
    const Index m = lattice.size() / 2;
    double phi = 0.0, sum = 0.0;
    for (Index k = m; k >= 0; --k) {
        phi = std::max({phi, std::abs(lattice(m + k)), std::abs(lattice(m - k))});
        sum += k == 0 ? phi : 2.0 * phi;
    }
    return dx * sum;
}

ConvolutionReport convolution_identity_check(const FrequencyProfile& profile, double a, const PathSpec& g,
                                             const PathSpec& h, const TimeLadder& ladder, const SpatialGrid& xs,
                                             const Region& inner, double rtol, double kernel_extent,
                                             const QuadratureOptions& opts) {
    for (double t : ladder.times())
        if (g.g(t) > h.g(t)) {
            std::ostringstream msg;
            msg << "path " << g.tag << " exceeds " << h.tag << " at t = " << t;
            throw PreconditionError(msg.str());
        }
    const auto lhs = evolve_along_path(profile, a, h, ladder, xs, opts);
    const auto base = evolve_along_path(profile, a, g, ladder, xs, opts);
    const NodeRange out = node_range(xs, inner);

    ConvolutionReport rep;
    rep.certificate = lhs.certificate;
    rep.certificate.absorb(base.certificate);
    rep.passed = true;
    double worst = -1.0;
    for (Index k = 0; k < ladder.size(); ++k) {
        const double t = ladder.times()[static_cast<std::size_t>(k)];
        const double gap = h.g(t) - g.g(t);
        const ComplexVector F = base.value.col(k);
        const ComplexVector L = lhs.value.col(k).segment(out.first, out.size());
        ComplexVector R;
        double kernel_mass = 1.0;
        if (gap > 0.0) {
            const auto lat = kernel_lattice(a, std::pow(gap, 1.0 / a), xs, kernel_extent);
            rep.certificate.absorb(lat.certificate);
            R = discrete_convolution(F, lat.value, xs, out);
            kernel_mass = lat.value.cwiseAbs().sum() * xs.spacing();
        } else {
            R = F.segment(out.first, out.size());
        }
        const double dev = (L - R).cwiseAbs().maxCoeff();
        const double tol = rtol * (L.cwiseAbs().maxCoeff() + F.cwiseAbs().maxCoeff() * kernel_mass);
        if (!(dev <= tol)) rep.passed = false;
        const double rel = tol > 0.0 ? dev / tol : (dev > 0.0 ? INFINITY : 0.0);
        if (rel > worst) {
            worst = rel;
            rep.max_deviation = dev;
            rep.tolerance = tol;
            rep.worst_t = t;
        }
    }
    return rep;
}

RealVector hl_maximal(const RealVector& modulus) {
    const Index n = modulus.size();
    RealVector prefix(n + 1);
    prefix(0) = 0.0;
    for (Index i = 0; i < n; ++i) prefix(i + 1) = prefix(i) + std::abs(modulus(i));
    RealVector M(n);
    for (Index i = 0; i < n; ++i) {
        double best = 0.0;
        const Index reach = std::max(i, n - 1 - i);
        for (Index m = 0; m <= reach; ++m) {
            const Index lo = std::max<Index>(0, i - m), hi = std::min<Index>(n - 1, i + m);
            best = std::max(best, (prefix(hi + 1) - prefix(lo)) / static_cast<double>(hi - lo + 1));
        }
        M(i) = best;
    }
    return M;
}

DominationReport domination_check(const FrequencyProfile& profile, double a, const PathSpec& g, const PathSpec& h,
                                  const TimeLadder& ladder, const SpatialGrid& xs, const DominationOptions& dopts,
                                  const QuadratureOptions& opts) {
    for (double t : ladder.times())
        if (g.g(t) > h.g(t)) {
            std::ostringstream msg;
            msg << "path " << g.tag << " exceeds " << h.tag << " at t = " << t;
            throw PreconditionError(msg.str());
        }
    h.validate(ladder);
    g.validate(ladder);
    const auto mh = maximal_field(profile, EvolutionParams::along_path(a, h.g), ladder, xs, opts);
    const auto mg = maximal_field(profile, EvolutionParams::along_path(a, g.g), ladder, xs, opts);

    DominationReport rep;
    rep.certificate_passed = mh.certificate.passed && mg.certificate.passed;
    rep.L = mh.sup_values;
    const RealVector& F = mg.sup_values;
    rep.R = hl_maximal(F);
    rep.eps = dopts.eps_fraction * rep.R.maxCoeff();
    rep.ratio = (rep.L.array() / (rep.R.array() + rep.eps)).maxCoeff();
    const double fl2 = l2_norm(xs, F).value;
    rep.l2_ratio = l2_norm(xs, rep.L).value / fl2;
    rep.hl_l2_ratio = l2_norm(xs, rep.R).value / fl2;

    if (dopts.with_kernel_sup) {
        const double dx = xs.spacing();
        rep.dilate_min = std::max(dopts.dilate_min, 2.0 * dx);
        const auto us = TimeLadder::geometric(rep.dilate_min, dopts.dilate_max, dopts.dilate_count).times();
        const NodeRange all{0, xs.count() - 1};
        RealVector sup_all = RealVector::Zero(xs.count()), sup_half = RealVector::Zero(xs.count());
        for (std::size_t k = 0; k < us.size(); ++k) {
            const auto lat = kernel_lattice(a, us[k], xs, dopts.kernel_extent, dopts.kernel);
            rep.certificate_passed = rep.certificate_passed && lat.certificate.passed;
            rep.kernel_constant = std::max(rep.kernel_constant, kernel_average_constant(lat.value, dx));
            const Index m = lat.value.size() / 2;
            const double y_end = static_cast<double>(m) * dx / us[k];
            rep.kernel_tail = std::max(rep.kernel_tail, std::abs(lat.value(0)) * us[k] * y_end * y_end);
            const RealVector conv = discrete_convolution(F, lat.value, xs, all).cwiseAbs();
            sup_all = sup_all.cwiseMax(conv);
            if (k % 2 == 0) sup_half = sup_half.cwiseMax(conv);
        }
        rep.kernel_sup_ratio = (sup_all.array() / (rep.R.array() + rep.eps)).maxCoeff();
        rep.dilate_refinement_delta = (sup_all.maxCoeff() - sup_half.maxCoeff()) / sup_all.maxCoeff();
    }
    return rep;
}

double exchange_excess(const std::vector<ComplexVector>& A, const std::vector<double>& u_t,
                       const std::vector<double>& us, double a, const SpatialGrid& xs, double kernel_extent,
                       const KernelOptions& opts) {
    if (A.size() != u_t.size() || A.empty()) throw DomainError("exchange check needs one dilate per field");
    const NodeRange all{0, xs.count() - 1};
    RealVector sup_abs = RealVector::Zero(xs.count());
    for (const auto& At : A) sup_abs = sup_abs.cwiseMax(At.cwiseAbs());

    RealVector lhs = RealVector::Zero(xs.count());
    for (std::size_t k = 0; k < A.size(); ++k) {
        const RealVector lat = kernel_lattice(a, u_t[k], xs, kernel_extent, opts).value;
        lhs = lhs.cwiseMax(discrete_convolution(A[k], lat, xs, all).cwiseAbs());
    }
    std::vector<double> all_u = us;
    all_u.insert(all_u.end(), u_t.begin(), u_t.end());
    RealVector rhs = RealVector::Zero(xs.count());
    for (double u : all_u) {
        const RealVector lat = kernel_lattice(a, u, xs, kernel_extent, opts).value.cwiseAbs();
        rhs = rhs.cwiseMax(discrete_convolution(sup_abs, lat, xs, all));
    }
    return (lhs - rhs).maxCoeff();
}

}  // namespace ctmax
