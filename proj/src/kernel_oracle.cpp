#include "ctmax/kernel_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ctmax {

namespace {

constexpr double kDampingCut = 39.0;  // e^{-39} < 1.2e-17
constexpr Index kReanchor = 1024;

struct ProbeGrid {
    double h;
    Index intervals;  // even
};

ProbeGrid probe_grid(const KernelProbeParams& p, double x_extent, const ProbeOptions& opts, int refinement) {
    const double Xi = p.effective_extent();
    const double S = p.damping();
    const double dphase = std::abs(p.tau()) * p.a * std::pow(Xi, p.a - 1.0) + x_extent;
    const double h_amp =
        std::min({1.0, 0.5 * p.N * p.mu_radius, std::pow(S, -1.0 / p.a)}) / opts.amplitude_nodes;
    const double h = std::min(opts.phase_step / dphase, h_amp);
    auto n = static_cast<Index>(std::ceil(Xi / h));
    n += n % 2;
    n <<= refinement;
    return {Xi / static_cast<double>(n), n};
}

/// Trapezoid sum and its every-other-node counterpart of sum_j c_j cos(x xi_j) on xi_j = j h.
std::pair<Complex, Complex> cosine_sums(const ComplexVector& c, double h, double x) {
    const Index n = c.size() - 1;
    const Complex rot = std::polar(1.0, x * h);
    Complex z(1.0, 0.0), fine(0.0), coarse(0.0);
    for (Index j = 0; j <= n; ++j) {
        if (j % kReanchor == 0) z = std::polar(1.0, x * h * static_cast<double>(j));
        const Complex term = c(j) * z.real();
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        fine += w * term;
        if (j % 2 == 0) coarse += (j == 0 || j == n ? 1.0 : 2.0) * term;
        z *= rot;
    }
    return {fine * h, coarse * h};
}

/// Trapezoid value of \int_R |integrand|, the bound on every |A(x)|.
double l1_bound(const ComplexVector& c, double h) {
    double s = 0.0;
    for (Index j = 0; j < c.size(); ++j) s += std::abs(c(j)) * ((j == 0 || j == c.size() - 1) ? 0.5 : 1.0);
    return 2.0 * s * h;
}

Interval clip(const KernelProbeParams& p, Interval iv) {
    return {std::max(iv.lo, 0.0), std::min(iv.hi, p.effective_extent())};
}

double phase_first(const KernelProbeParams& p, double x, double xi) {
    return p.a * p.tau() * std::pow(xi, p.a - 1.0) - x;
}

Amplitude default_amplitude(const KernelProbeParams& p) {
    return {[p](double xi) { return p.amplitude(xi); }, [p](double xi) { return p.amplitude_derivative(xi); }};
}

}  // namespace

void KernelProbeParams::validate() const {
    if (!(a > 1.0)) throw DomainError("probe needs a > 1");
    if (!(gamma > 1.0)) throw DomainError("probe needs gamma > 1");
    if (!(alpha >= 0.0)) throw DomainError("probe needs alpha >= 0");
    if (!(N > 0.0) || !(mu_radius > 0.0)) throw DomainError("probe needs N > 0 and a positive cutoff radius");
    if (!(t1 > 0.0 && t1 < 1.0 && t2 > 0.0 && t2 < 1.0)) throw DomainError("probe times must lie in (0, 1)");
}

bool KernelProbeParams::hypothesis_satisfied() const {
    const bool lower = alpha > 0.5 * a * (1.0 - 1.0 / gamma);
    const bool upper = !(gamma < a / (a - 1.0)) || alpha < 0.5;
    return lower && upper;
}

double KernelProbeParams::damping() const { return std::pow(t1, gamma) + std::pow(t2, gamma); }

double KernelProbeParams::effective_extent() const {
    return std::min(N * mu_radius, std::pow(kDampingCut / damping(), 1.0 / a));
}

double KernelProbeParams::amplitude(double xi) const {
    const double r = std::abs(xi);
    const Bump mu(mu_radius);
    return std::pow(1.0 + xi * xi, -0.5 * alpha) * std::exp(-damping() * std::pow(r, a)) * mu(xi / N);
}

double KernelProbeParams::amplitude_derivative(double xi) const {
    const double r = std::abs(xi);
    const double S = damping();
    const Bump mu(mu_radius);
    const double base = std::pow(1.0 + xi * xi, -0.5 * alpha) * std::exp(-S * std::pow(r, a));
    const double sgn = xi < 0.0 ? -1.0 : 1.0;
    const double log_der = -alpha * xi / (1.0 + xi * xi) - a * S * std::pow(r, a - 1.0) * sgn;
    return base * (log_der * mu(xi / N) + mu.derivative(xi / N) / N);
}

Certified<ComplexVector> probe_integrals(const KernelProbeParams& p, const RealVector& xs,
                                         const ProbeOptions& opts) {
    p.validate();
    const double x_extent = xs.size() > 0 ? xs.cwiseAbs().maxCoeff() : 0.0;
    ComplexVector out(xs.size());
    for (int attempt = 0;; ++attempt) {
        const ProbeGrid g = probe_grid(p, x_extent, opts, attempt);
        ComplexVector c(g.intervals + 1);
        for (Index j = 0; j <= g.intervals; ++j) {
            const double xi = g.h * static_cast<double>(j);
            c(j) = p.amplitude(xi) * std::polar(1.0, p.tau() * std::pow(xi, p.a));
        }
        const double floor = 1e-8 * l1_bound(c, g.h);
        HalvingCertificate cert;
        cert.rtol = opts.rtol;
        cert.nodes = g.intervals + 1;
        cert.refinements = attempt;
        for (Index i = 0; i < xs.size(); ++i) {
            const auto [fine, coarse] = cosine_sums(c, g.h, xs(i));
            out(i) = 2.0 * fine;
            const double dev = 2.0 * std::abs(fine - coarse);
            const double scale = std::max(std::abs(out(i)), floor);
            if (scale > 0.0 && dev / scale >= cert.relative()) {
                cert.max_deviation = dev;
                cert.scale = scale;
            }
            cert.passed = cert.passed && dev <= opts.rtol * scale;
        }
        if (cert.passed || attempt >= opts.max_refinements) return {out, cert};
    }
}

Certified<Complex> probe_integral(const KernelProbeParams& p, double x, const ProbeOptions& opts) {
    RealVector xs(1);
    xs(0) = x;
    auto r = probe_integrals(p, xs, opts);
    return {r.value(0), r.certificate};
}

double stationary_point(double a, double t, double x) {
    if (!(t > 0.0)) throw DomainError("stationary point needs t > 0");
    if (!(a > 1.0)) throw DomainError("stationary point needs a > 1");
    return std::pow(std::abs(x) / (t * a), 1.0 / (a - 1.0));
}

RegionSplit region_split(double a, double t, double x, const SplitConstants& c) {
    if (!(a > 1.0)) throw DomainError("region split needs a > 1");
    RegionSplit s;
    s.delta = std::min(c.delta, std::pow(2.0, -1.0 / (a - 1.0)));
    s.bigK = std::max(c.bigK, std::pow(2.0, 1.0 / (a - 1.0)));
    s.large_x = std::abs(x) > c.C0;
    s.lower = s.large_x ? 1.0 : 1.0 / std::abs(x);
    if (t == 0.0) {
        s.degenerate = true;
        return s;
    }
    s.rho = stationary_point(a, std::abs(t), x);
    return s;
}

RegionSplit region_split(const KernelProbeParams& p, double x, const SplitConstants& c) {
    return region_split(p.a, p.tau(), x, c);
}

double vdc_certificate(const KernelProbeParams& p, double x, Interval iv, int order, const Amplitude& G,
                       const VdcConstants& c) {
    if (order != 1 && order != 2) throw DomainError("Van der Corput order must be 1 or 2");
    iv = clip(p, iv);
    if (iv.empty()) return 0.0;

    double lambda = 0.0;
    if (order == 1) {
        const double d_lo = phase_first(p, x, iv.lo), d_hi = phase_first(p, x, iv.hi);
        lambda = (d_lo > 0.0) == (d_hi > 0.0) && d_lo != 0.0 && d_hi != 0.0 ? std::min(std::abs(d_lo), std::abs(d_hi))
                                                                           : 0.0;
    } else {
        const double coef = p.a * (p.a - 1.0) * std::abs(p.tau());
        lambda = coef * std::min(std::pow(iv.lo, p.a - 2.0), std::pow(iv.hi, p.a - 2.0));
    }
    if (!(lambda > 0.0)) {
        std::ostringstream msg;
        msg << "phase derivative of order " << order << " vanishes on [" << iv.lo << ", " << iv.hi << "]";
        throw PreconditionError(msg.str());
    }

    const double h_amp = std::min({1.0, 0.5 * p.N * p.mu_radius, std::pow(p.damping(), -1.0 / p.a)}) / 64.0;
    const auto n = std::max<Index>(4096, static_cast<Index>(std::ceil((iv.hi - iv.lo) / h_amp)));
    const double h = (iv.hi - iv.lo) / static_cast<double>(n);
    double sup = 0.0, variation = 0.0;
    for (Index j = 0; j <= n; ++j) {
        const double xi = iv.lo + h * static_cast<double>(j);
        sup = std::max(sup, std::abs(G.value(xi)));
        variation += ((j == 0 || j == n) ? 0.5 : 1.0) * h * std::abs(G.derivative(xi));
    }
    const double ck = order == 1 ? c.c1 : c.c2;
    return ck * std::pow(lambda, -1.0 / order) * (sup + variation);
}

double vdc_certificate(const KernelProbeParams& p, double x, Interval iv, int order, const VdcConstants& c) {
    return vdc_certificate(p, x, iv, order, default_amplitude(p), c);
}

Certified<Complex> restricted_integral(const KernelProbeParams& p, double x, Interval iv, const Amplitude& G,
                                       const ProbeOptions& opts) {
    iv = clip(p, iv);
    if (iv.empty()) return {Complex(0.0), HalvingCertificate{}};
    const double dmax = std::max(std::abs(phase_first(p, x, iv.lo)), std::abs(phase_first(p, x, iv.hi)));
    const double h_amp =
        std::min({1.0, 0.5 * p.N * p.mu_radius, std::pow(p.damping(), -1.0 / p.a)}) / opts.amplitude_nodes;
    const double h0 = std::min(dmax > 0.0 ? opts.phase_step / dmax : h_amp, h_amp);
    auto n0 = std::max<Index>(4, static_cast<Index>(std::ceil((iv.hi - iv.lo) / h0)));
    n0 = (n0 + 3) / 4 * 4;
    // The interval ends carry nonzero amplitude, so trapezoid sums on spacings h, 2h, 4h are
    // combined into two Simpson values whose difference is the certificate.
    for (int attempt = 0;; ++attempt) {
        const Index n = n0 << attempt;
        const double h = (iv.hi - iv.lo) / static_cast<double>(n);
        Complex t1(0.0), t2(0.0), t4(0.0);
        double mass = 0.0;
        for (Index j = 0; j <= n; ++j) {
            const double xi = iv.lo + h * static_cast<double>(j);
            const Complex term = G.value(xi) * std::polar(1.0, p.tau() * std::pow(xi, p.a) - x * xi);
            const double w = (j == 0 || j == n) ? 0.5 : 1.0;
            t1 += w * term;
            if (j % 2 == 0) t2 += w * term;
            if (j % 4 == 0) t4 += w * term;
            mass += w * std::abs(term);
        }
        t1 *= h;
        t2 *= 2.0 * h;
        t4 *= 4.0 * h;
        const Complex fine = (4.0 * t1 - t2) / 3.0;
        const Complex coarse = (4.0 * t2 - t4) / 3.0;
        HalvingCertificate cert;
        cert.rtol = opts.rtol;
        cert.nodes = n + 1;
        cert.refinements = attempt;
        cert.max_deviation = std::abs(fine - coarse);
        cert.scale = std::max(std::abs(fine), 1e-8 * mass * h);
        cert.passed = cert.max_deviation <= opts.rtol * cert.scale;
        if (cert.passed || attempt >= opts.max_refinements) return {fine, cert};
    }
}

Certified<Complex> restricted_integral(const KernelProbeParams& p, double x, Interval iv, const ProbeOptions& opts) {
    return restricted_integral(p, x, iv, default_amplitude(p), opts);
}

double decay_exponent_k(double a, double gamma, double alpha) {
    const double D = (a - 1.0) * gamma - a;
    if (D == 0.0) {
        if (alpha == 0.5) return std::numeric_limits<double>::quiet_NaN();
        return alpha > 0.5 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    }
    const double beta = (alpha - 0.5) / D;
    return (alpha + 0.5 * (a - 2.0) + beta * a) / (a - 1.0);
}

EnvelopeSpec EnvelopeSpec::standard() {
    EnvelopeSpec s;
    const Index nt = 8;
    for (Index k = 0; k < nt; ++k)
        s.times.push_back(std::exp(std::log(1e-6) + (std::log(0.9) - std::log(1e-6)) * static_cast<double>(k) /
                                                        static_cast<double>(nt - 1)));
    for (int k = 0; k <= 8; ++k) s.Ns.push_back(std::pow(4.0, k));
    return s;
}

RealVector log_grid(double x_min, double x_max, Index x_count, Index extend) {
    if (!(x_min > 0.0 && x_max > x_min) || x_count < 2) throw DomainError("log grid needs 0 < x_min < x_max");
    const double lr = (std::log(x_max) - std::log(x_min)) / static_cast<double>(x_count - 1);
    RealVector x(x_count + 2 * extend);
    for (Index j = 0; j < x.size(); ++j) x(j) = std::exp(std::log(x_min) + lr * static_cast<double>(j - extend));
    return x;
}

RealVector envelope(const EnvelopeSpec& spec, const RealVector& xs, bool* certified, Index* probes) {
    if (spec.times.empty() || spec.Ns.empty()) throw DomainError("envelope needs nonempty time and N samples");
    RealVector E = RealVector::Zero(xs.size());
    bool ok = true;
    Index count = 0;
    for (std::size_t i1 = 0; i1 < spec.times.size(); ++i1)
        for (std::size_t i2 = 0; i2 <= i1; ++i2)
            for (double N : spec.Ns) {
                KernelProbeParams p{spec.a, spec.gamma, spec.alpha, N, spec.times[i1], spec.times[i2], spec.mu_radius};
                auto r = probe_integrals(p, xs, spec.probe);
                E = E.cwiseMax(r.value.cwiseAbs());
                ok = ok && r.certificate.passed;
                ++count;
            }
    if (certified) *certified = ok;
    if (probes) *probes = count;
    return E;
}

double loglog_slope(const RealVector& x, const RealVector& y, Index first, Index count) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (Index i = first; i < first + count; ++i) {
        const double lx = std::log(x(i)), ly = std::log(y(i));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(count);
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

double even_mass(const RealVector& x, const RealVector& E, Index first, Index last) {
    double m = 0.0;
    for (Index i = first; i < last; ++i) m += 0.5 * (x(i + 1) - x(i)) * (E(i) + E(i + 1));
    return 2.0 * m;
}

}  // namespace

EnvelopeReport envelope_l1_estimate(const EnvelopeSpec& spec) {
    const double lr = (std::log(spec.x_max) - std::log(spec.x_min)) / static_cast<double>(spec.x_count - 1);
    const auto ext = static_cast<Index>(std::ceil(std::log(2.0) / lr - 1e-12));
    const RealVector xe = log_grid(spec.x_min, spec.x_max, spec.x_count, ext);

    EnvelopeReport r;
    const RealVector Ee = envelope(spec, xe, &r.certificates_passed, &r.probes);
    const Index n = spec.x_count;
    r.x = xe.segment(ext, n);
    r.E = Ee.segment(ext, n);

    const Index third = n / 3;
    r.small_slope = loglog_slope(r.x, r.E, 0, third);
    r.large_slope = loglog_slope(r.x, r.E, n - third, third);
    r.l1_mass = even_mass(xe, Ee, ext, ext + n - 1);
    r.l1_mass_extended = even_mass(xe, Ee, 0, xe.size() - 1);
    r.extended_factor = std::exp(lr * static_cast<double>(ext));
    r.mass_change = std::abs(r.l1_mass_extended - r.l1_mass) / r.l1_mass_extended;
    r.predicted_small_slope = std::min(0.0, spec.alpha - 1.0);
    r.k = decay_exponent_k(spec.a, spec.gamma, spec.alpha);
    KernelProbeParams hp;
    hp.a = spec.a;
    hp.gamma = spec.gamma;
    hp.alpha = spec.alpha;
    r.hypothesis_satisfied = hp.hypothesis_satisfied();

    const double large = std::isnan(r.k) ? spec.k_cap : std::min(r.k, spec.k_cap);
    RealVector shape(n);
    for (Index i = 0; i < n; ++i)
        shape(i) = r.x(i) <= 1.0 ? std::pow(r.x(i), r.predicted_small_slope) : std::pow(r.x(i), -large);
    const double C = (r.E.array() / shape.array()).maxCoeff();
    r.predicted_bound = C * shape;
    return r;
}

HEpsBounds h_eps_derivative_bounds(double a, double eps, double xi) {
    if (xi == 0.0) throw DomainError("h_eps bounds need xi != 0");
    if (!(a > 1.0) || !(eps > 0.0)) throw DomainError("h_eps bounds need a > 1 and eps > 0");
    const double r = std::abs(xi);
    const double log_y = std::log(eps) + a * std::log(r);
    const double y = std::exp(log_y);
    const double y_e = std::exp(log_y - y);
    const double y2_e = std::exp(2.0 * log_y - y);
    HEpsBounds b;
    b.h1 = a * y_e / r;
    b.h2 = std::abs(a * a * y2_e - a * (a - 1.0) * y_e) / (r * r);
    b.bound1 = a / (std::numbers::e * r);
    b.bound2 = (a * a + a) * 4.0 * std::exp(-2.0) / (r * r);
    return b;
}

}  // namespace ctmax
