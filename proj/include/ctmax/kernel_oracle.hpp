#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "ctmax/bump.hpp"
#include "ctmax/profile.hpp"

namespace ctmax {

/// Parameters of
///   A(x) = \int e^{i((t1 - t2)|xi|^a - x xi)} (1 + xi^2)^{-alpha/2} e^{-(t1^gamma + t2^gamma)|xi|^a} mu(xi/N) dxi
/// with mu the plateau bump of radius mu_radius.
struct KernelProbeParams {
    double a = 2.0;
    double gamma = 2.0;
    double alpha = 0.55;
    double N = 1.0;
    double t1 = 0.5;
    double t2 = 0.25;
    double mu_radius = 1.0;

    /// Throws DomainError on a <= 1, gamma <= 1, alpha <= 0, N <= 0 or times outside (0,1).
    void validate() const;
    /// alpha > a(1 - 1/gamma)/2 and, for gamma < a/(a-1), alpha < 1/2.
    bool hypothesis_satisfied() const;

    double tau() const { return t1 - t2; }
    double damping() const;
    /// Beyond this frequency the amplitude is 0 (cutoff) or below e^{-39} (damping).
    double effective_extent() const;
    /// (1 + xi^2)^{-alpha/2} e^{-S|xi|^a} mu(xi/N) and its derivative.
    double amplitude(double xi) const;
    double amplitude_derivative(double xi) const;
};

struct ProbeOptions {
    double phase_step = kPi / 4.0;
    /// Amplitude resolution: step <= min(1, N R / 2, S^{-1/a}) / amplitude_nodes.
    double amplitude_nodes = 32.0;
    double rtol = 1e-6;
    int max_refinements = 8;
};

/// A(x) by composite trapezoid on [0, effective_extent] using evenness in xi.
Certified<Complex> probe_integral(const KernelProbeParams& p, double x, const ProbeOptions& opts = {});
/// A at every x on one grid resolved for max |x|.
Certified<ComplexVector> probe_integrals(const KernelProbeParams& p, const RealVector& xs,
                                         const ProbeOptions& opts = {});

/// rho = (|x| / (t a))^{1/(a-1)}, where F(xi) = t xi^a - x xi has F'(rho) = 0.
double stationary_point(double a, double t, double x);

/// Closed interval of the positive frequency axis; empty when hi <= lo.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty() const { return !(hi > lo); }
};

/// Cut points of the positive axis around the stationary point.
struct RegionSplit {
    bool degenerate = false;
    bool large_x = false;
    double rho = 0.0;
    double delta = 0.0;
    double bigK = 0.0;
    /// |x|^{-1} on the small-x branch, 1 on the large-x branch.
    double lower = 0.0;

    Interval I1() const { return {lower, delta * rho}; }
    Interval I2() const { return {std::max(lower, delta * rho), bigK * rho}; }
    Interval I3() const {
        return {std::max(lower, bigK * rho), std::numeric_limits<double>::infinity()};
    }
    /// lower, delta * rho, K * rho.
    std::vector<double> boundaries() const { return {lower, delta * rho, bigK * rho}; }
};

struct SplitConstants {
    double delta = 0.125;
    double bigK = 8.0;
    double C0 = 8.0;
};

/// For a < 2, delta and K are moved so that delta^{a-1} <= 1/2 <= 2 <= K^{a-1}.
RegionSplit region_split(const KernelProbeParams& p, double x, const SplitConstants& c = {});
/// Same with the time difference t given directly (t = 0 gives a degenerate split).
RegionSplit region_split(double a, double t, double x, const SplitConstants& c = {});

struct VdcConstants {
    double c1 = 3.0;
    double c2 = 8.0;
};

/// Amplitude given as value and derivative.
struct Amplitude {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
};

/// c_k lambda^{-1/k} (sup |G| + \int |G'|) for F(xi) = (t1 - t2) xi^a - x xi on `iv`, with
/// lambda = inf |F'| (order 1) or inf |F''| (order 2). The interval is clipped to the
/// amplitude's support. Throws PreconditionError when lambda = 0.
double vdc_certificate(const KernelProbeParams& p, double x, Interval iv, int order, const VdcConstants& c = {});
double vdc_certificate(const KernelProbeParams& p, double x, Interval iv, int order, const Amplitude& G,
                       const VdcConstants& c = {});

/// \int_iv e^{iF(xi)} G(xi) dxi by composite Simpson, iv clipped as above.
Certified<Complex> restricted_integral(const KernelProbeParams& p, double x, Interval iv,
                                       const ProbeOptions& opts = {});
Certified<Complex> restricted_integral(const KernelProbeParams& p, double x, Interval iv, const Amplitude& G,
                                       const ProbeOptions& opts = {});

/// Predicted decay exponent of the large-x wing:
/// k = (alpha + (a-2)/2 + beta a)/(a-1), beta = (alpha - 1/2)/((a-1)gamma - a).
/// Infinite (with the sign of alpha - 1/2) when gamma = a/(a-1).
double decay_exponent_k(double a, double gamma, double alpha);

struct EnvelopeSpec {
    double a = 2.0;
    double gamma = 2.0;
    double alpha = 0.55;
    double mu_radius = 1.0;
    /// (t1, t2) runs over pairs t2 <= t1 of these samples; the swap only conjugates A.
    std::vector<double> times;
    std::vector<double> Ns;
    double x_min = 1e-4;
    double x_max = 32.0;
    Index x_count = 48;
    /// Cap on the displayed large-x exponent of predicted_bound.
    double k_cap = 2.0;
    ProbeOptions probe;

    static EnvelopeSpec standard();
};

struct EnvelopeReport {
    RealVector x;
    RealVector E;
    /// Smallest multiple of |x|^{min(0, alpha-1)} (x <= 1) and |x|^{-min(k, k_cap)} (x > 1) above E.
    RealVector predicted_bound;
    double small_slope = 0.0;
    double large_slope = 0.0;
    double l1_mass = 0.0;
    /// Same quantities on the x-range extended by at least a factor 2 at each end.
    double extended_factor = 1.0;
    double l1_mass_extended = 0.0;
    double mass_change = 0.0;
    double predicted_small_slope = 0.0;
    double k = 0.0;
    bool hypothesis_satisfied = false;
    bool certificates_passed = true;
    Index probes = 0;
};

/// Log grid x_min r^j, j = lo..hi, r = (x_max/x_min)^{1/(x_count-1)}.
RealVector log_grid(double x_min, double x_max, Index x_count, Index extend = 0);

/// E(x) = max over sampled (t1, t2, N) of |A(x)| on a log grid, with wing slopes and L^1 mass.
EnvelopeReport envelope_l1_estimate(const EnvelopeSpec& spec);
/// Envelope on a given grid (no fitting).
RealVector envelope(const EnvelopeSpec& spec, const RealVector& xs, bool* certified = nullptr,
                    Index* probes = nullptr);

/// Least-squares slope of log y against log x over [first, first + count).
double loglog_slope(const RealVector& x, const RealVector& y, Index first, Index count);

struct HEpsBounds {
    double h1 = 0.0;
    double bound1 = 0.0;
    double h2 = 0.0;
    double bound2 = 0.0;
    bool holds() const { return h1 <= bound1 && h2 <= bound2; }
};

/// |h'| and |h''| of h(xi) = e^{-eps |xi|^a} with the eps-free bounds a/(e|xi|) and
/// (a^2 + a) 4e^{-2}/xi^2.
HEpsBounds h_eps_derivative_bounds(double a, double eps, double xi);

}  // namespace ctmax
