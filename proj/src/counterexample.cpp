#include "ctmax/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "ctmax/norms.hpp"

namespace ctmax {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kEtaSamples = 201;

/// Window abscissa of node j, measured from the node at the origin so that it is exactly 0 there.
double window_x(const CounterexampleInstance& inst, Index j) {
    const Index origin = inst.xs.nearest(0.0);
    return std::clamp(static_cast<double>(j - origin) * inst.xs.spacing(), 0.0, inst.window_hi);
}

double window_end(double v, double a, double gamma) { return std::pow(v, 2.0 * a / gamma - 2.0 * (a - 1.0)); }

}  // namespace

CounterexampleInstance make_instance(double v, double a, double gamma, const InstancePolicy& policy) {
    if (!(a > 1.0)) throw DomainError("dispersion exponent a must exceed 1");
    if (!(gamma > 1.0)) throw DomainError("the counterexample family needs gamma > 1");
    if (!(v > 0.0 && v < policy.v0)) {
        std::ostringstream msg;
        msg << "v = " << v << " must lie in (0, " << policy.v0 << ")";
        throw DomainError(msg.str());
    }

    const double R = std::pow(v, (a - 1.0) - a / gamma);
    const double center = -1.0 / (v * v);
    const double hw = R / v;
    const double W = window_end(v, a, gamma);

    const auto steps_w = static_cast<Index>(std::max(1.0, std::ceil(W / (policy.x_step * v))));
    const double dx = W / static_cast<double>(steps_w);
    const double reach = 1.25 * a * std::pow(policy.extinction * std::pow(v, 2.0 * a - 2.0 * gamma * (a - 1.0)), 1.0 / gamma);
    const auto right = static_cast<Index>(std::ceil(std::max(reach, W) / dx));
    const auto left = static_cast<Index>(std::ceil(policy.x_left / dx));
    SpatialGrid xs(-static_cast<double>(left) * dx, static_cast<double>(right) * dx, left + right + 1);

    const double xi_min = std::max(1.0 / (v * v) - hw, 0.0);
    const double xi_max = 1.0 / (v * v) + hw;
    const double t_damp = xi_min > 0.0 ? std::pow(std::log(1.0 / policy.amplitude_cutoff) / std::pow(xi_min, a), 1.0 / gamma)
                                       : std::numeric_limits<double>::infinity();
    const double t_eff = std::min(policy.t_max, t_damp);
    const double bound = t_eff * a * std::pow(xi_max, a - 1.0) + xs.max_abs();
    const double h = std::min(policy.phase_step / bound, 0.5 * hw / static_cast<double>(policy.transition_nodes));
    auto intervals = static_cast<Index>(std::ceil(2.0 * hw / h));
    intervals += intervals % 2;
    const Index count = intervals + 1;
    if (count > policy.max_nodes) {
        std::ostringstream msg;
        msg << "instance v = " << v << ", a = " << a << ", gamma = " << gamma << " requires " << count
            << " frequency nodes, cap is " << policy.max_nodes;
        throw ResolutionError(msg.str());
    }

    const Bump g(R);
    FrequencyGrid grid(center - hw, center + hw, count);
    auto profile = FrequencyProfile::sample(grid, [v, g](double xi) { return Complex(v * g(v * xi + 1.0 / v)); });
    return {v, a, gamma, R, center, hw, W, std::move(profile), xs};
}

double optimal_time(double x, double v, double a, double gamma) {
    const double W = window_end(v, a, gamma);
    if (!(x >= 0.0 && x <= W * (1.0 + 1e-12))) {
        std::ostringstream msg;
        msg << "x = " << x << " outside the window [0, " << W << "]";
        throw DomainError(msg.str());
    }
    const double t = x * std::pow(v, 2.0 * (a - 1.0)) / a;
    if (x > 0.0 && !(t > 0.0 && t <= 1.0)) {
        std::ostringstream msg;
        msg << "optimal time " << t << " at x = " << x << " leaves (0, 1]";
        throw DomainError(msg.str());
    }
    return t;
}

double optimal_time(const CounterexampleInstance& inst, double x) { return optimal_time(x, inst.v, inst.a, inst.gamma); }

double phase_remainder(double x, double t, double v, double a, double eta) {
    return x * eta / v + t / std::pow(v, 2.0 * a) * std::expm1(a * std::log1p(-v * eta));
}

double damping_exponent(double t, double v, double a, double gamma, double eta) {
    return std::pow(t, gamma) * std::pow((1.0 - v * eta) / (v * v), a);
}

BlowUpFields blow_up_fields(const CounterexampleInstance& inst, const TimeLadder& ladder,
                            const QuadratureOptions& opts) {
    const SpatialGrid& xs = inst.xs;
    const NodeRange win = node_range(xs, inst.window());

    RealVector t_opt(win.size());
    std::vector<double> positive;
    bool window_ok = true;
    for (Index j = win.first; j <= win.last; ++j) {
        const double x = window_x(inst, j);
        const double t = optimal_time(inst, x);
        t_opt(j - win.first) = t;
        if (t > 0.0) positive.push_back(t);
        if (x > 0.0 && x < inst.window_hi && !(t > 0.0 && t < 1.0)) window_ok = false;
    }
    if (!positive.empty()) {
        const double smallest = *std::min_element(positive.begin(), positive.end());
        if (ladder.t_min() > smallest) {
            std::ostringstream msg;
            msg << "ladder starts at " << ladder.t_min() << ", above the smallest optimal time " << smallest;
            throw PreconditionError(msg.str());
        }
    }

    TimeLadder merged = ladder.merged(positive);
    const auto& times = merged.times();
    std::vector<Index> track(static_cast<std::size_t>(xs.count()), -1);
    RealVector used(win.size());
    for (Index j = win.first; j <= win.last; ++j) {
        const double t = t_opt(j - win.first);
        Index k = 0;
        if (t > 0.0) k = std::lower_bound(times.begin(), times.end(), t) - times.begin();
        track[static_cast<std::size_t>(j)] = k;
        used(j - win.first) = times[static_cast<std::size_t>(k)];
    }

    MaximalField mf = maximal_field(inst.profile, inst.params(), merged, xs, opts, track);

    BlowUpFields out{merged, std::move(mf), win, used};
    out.window_check = window_ok;
    for (Index j = win.first; j <= win.last; ++j)
        if (!(out.maximal.sup_values(j) >= out.maximal.tracked(j))) out.dominance_check = false;

    const double cos1 = std::cos(1.0);
    for (Index j = win.first; j <= win.last; ++j) {
        const double x = window_x(inst, j);
        const double t = used(j - win.first);
        for (int k = 0; k < kEtaSamples; ++k) {
            const double eta = inst.support_radius * (2.0 * k / (kEtaSamples - 1) - 1.0);
            const double F = phase_remainder(x, t, inst.v, inst.a, eta);
            out.F_max = std::max(out.F_max, std::abs(F));
            out.G_max = std::max(out.G_max, damping_exponent(t, inst.v, inst.a, inst.gamma, eta));
            if (std::abs(F) <= 1.0 && !(std::cos(F) >= cos1)) out.cosine_check = false;
        }
    }
    return out;
}

ExperimentRecord blow_up_record(const CounterexampleInstance& inst, const BlowUpFields& fields, double s,
                                const TrialThresholds& thresholds) {
    ExperimentRecord r;
    r.a = inst.a;
    r.gamma = inst.gamma;
    r.s = s;
    r.v = inst.v;
    const auto sob = sobolev_norm(inst.profile, s, SobolevKind::inhomogeneous);
    const auto hom = sobolev_norm(inst.profile, s, SobolevKind::homogeneous);
    r.sobolev_norm = sob.value;
    r.homogeneous_norm = hom.value;

    const SpatialGrid& xs = inst.xs;
    const MaximalField& mf = fields.maximal;
    r.window_l2_lower = l2_norm(xs, mf.tracked, inst.window()).value;
    r.maximal_l2 = l2_norm(xs, mf.sup_values, inst.window()).value;
    r.ratio = r.maximal_l2 / r.sobolev_norm;
    r.weak_ratio = weak_l2_quasinorm(xs, mf.sup_values, inst.window()) / r.sobolev_norm;
    r.global_maximal_l2 = l2_norm(xs, mf.sup_values).value;
    r.tail_fraction = tail_mass_fraction(xs, mf.sup_values);
    r.F_max = fields.F_max;
    r.G_max = fields.G_max;
    r.ladder_min = fields.ladder.t_min();
    r.ladder_max = fields.ladder.t_max();
    r.frequency_nodes = inst.profile.grid().count();
    r.spatial_nodes = xs.count();
    r.ladder_size = fields.ladder.size();

    r.f_check = r.F_max <= thresholds.F_bound;
    r.g_check = r.G_max <= thresholds.G_bound;
    r.cosine_check = fields.cosine_check;
    r.window_check = fields.window_check;
    r.dominance_check = fields.dominance_check;
    r.tail_check = r.tail_fraction < thresholds.tail_bound;
    r.certificate_passed = mf.certificate.passed && sob.certificate.passed && hom.certificate.passed;
    return r;
}

ExperimentRecord blow_up_trial(const CounterexampleInstance& inst, double s, const TimeLadder& ladder,
                               const TrialThresholds& thresholds, const QuadratureOptions& opts) {
    return blow_up_record(inst, blow_up_fields(inst, ladder, opts), s, thresholds);
}

ExperimentRecord infeasible_record(double a, double gamma, double s, double v, const std::string& error) {
    ExperimentRecord r;
    r.a = a;
    r.gamma = gamma;
    r.s = s;
    r.v = v;
    for (double* p : {&r.sobolev_norm, &r.window_l2_lower, &r.maximal_l2, &r.ratio, &r.F_max, &r.G_max,
                      &r.ladder_min, &r.ladder_max, &r.weak_ratio, &r.homogeneous_norm, &r.global_maximal_l2,
                      &r.tail_fraction})
        *p = kNaN;
    r.feasible = false;
    r.error = error;
    return r;
}

std::optional<double> certified_v0(const std::vector<ExperimentRecord>& records) {
    std::map<double, bool> ok;
    for (const auto& r : records) {
        const bool pass = r.feasible && r.f_check && r.g_check;
        auto [it, inserted] = ok.emplace(r.v, pass);
        if (!inserted) it->second = it->second && pass;
    }
    std::optional<double> v0;
    for (const auto& [v, pass] : ok) {
        if (!pass) break;
        v0 = v;
    }
    return v0;
}

}  // namespace ctmax
