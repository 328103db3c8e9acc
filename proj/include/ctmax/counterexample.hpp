#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctmax/bump.hpp"
#include "ctmax/maximal.hpp"

namespace ctmax {

/// How make_instance sizes its grids.
struct InstancePolicy {
    double v0 = 0.5;
    /// Largest ladder time the instance must resolve (damping may lower the effective one).
    double t_max = 1.0 - 1e-4;
    double phase_step = kPi / 4.0;
    double amplitude_cutoff = 1e-17;
    /// Frequency nodes across one smooth-step transition of the bump.
    Index transition_nodes = 64;
    Index max_nodes = Index{1} << 24;
    /// Spatial step as a fraction of v.
    double x_step = 0.125;
    /// Extent of the spatial grid left of the origin.
    double x_left = 6.0;
    /// Damping exponent at which the rightward transport is considered extinct.
    double extinction = 12.0;
};

struct CounterexampleInstance {
    double v;
    double a;
    double gamma;
    /// R = v^{(a-1) - a/gamma}.
    double support_radius;
    /// Frequency support is centered at -1/v^2 with half-width R/v.
    double center;
    double half_width;
    /// Upper end of [0, v^{2a/gamma - 2(a-1)}].
    double window_hi;
    FrequencyProfile profile;
    SpatialGrid xs;

    EvolutionParams params() const { return EvolutionParams::complex_time(a, gamma); }
    Bump bump() const { return Bump(support_radius); }
    Region window() const { return Region::interval(0.0, window_hi); }
};

/// \hat f_v(xi) = v g(v xi + 1/v), g the bump of radius v^{(a-1)-a/gamma}, on a grid that
/// resolves every time up to policy.t_max on the instance's spatial grid.
CounterexampleInstance make_instance(double v, double a, double gamma, const InstancePolicy& policy = {});

/// t = x v^{2(a-1)} / a for x in the window; t = 0 at x = 0.
double optimal_time(double x, double v, double a, double gamma);
double optimal_time(const CounterexampleInstance& inst, double x);

/// F(eta) = x eta / v + (t / v^{2a}) ((1 - v eta)^a - 1), the phase left after removing
/// the linear part, and G(eta) = t^gamma ((1 - v eta) / v^2)^a, the damping exponent.
double phase_remainder(double x, double t, double v, double a, double eta);
double damping_exponent(double t, double v, double a, double gamma, double eta);

/// Everything a blow-up trial needs that does not depend on s.
struct BlowUpFields {
    TimeLadder ladder;
    MaximalField maximal;
    /// Window node range of the instance grid and the optimal times used there.
    NodeRange window;
    RealVector window_times;
    double F_max = 0.0;
    double G_max = 0.0;
    bool cosine_check = true;
    bool window_check = true;
    bool dominance_check = true;
};

/// Maximal field over `ladder` merged with the window's optimal times.
/// Throws PreconditionError if the ladder starts above the smallest positive optimal time.
BlowUpFields blow_up_fields(const CounterexampleInstance& inst, const TimeLadder& ladder,
                            const QuadratureOptions& opts = {});

/// One row of a sharpness sweep.
struct ExperimentRecord {
    double a = 0.0;
    double gamma = 0.0;
    double s = 0.0;
    double v = 0.0;
    double sobolev_norm = 0.0;
    double window_l2_lower = 0.0;
    double maximal_l2 = 0.0;
    double ratio = 0.0;
    double F_max = 0.0;
    double G_max = 0.0;
    double ladder_min = 0.0;
    double ladder_max = 0.0;

    double weak_ratio = 0.0;
    double homogeneous_norm = 0.0;
    double global_maximal_l2 = 0.0;
    double tail_fraction = 0.0;
    Index frequency_nodes = 0;
    Index spatial_nodes = 0;
    Index ladder_size = 0;

    bool feasible = true;
    std::string error;
    bool f_check = false;
    bool g_check = false;
    bool cosine_check = false;
    bool window_check = false;
    bool dominance_check = false;
    bool tail_check = false;
    bool certificate_passed = false;

    bool checks_passed() const {
        return feasible && f_check && g_check && cosine_check && window_check && dominance_check && tail_check &&
               certificate_passed;
    }
};

struct TrialThresholds {
    double F_bound = 1.0;
    double G_bound = 1.0;
    double tail_bound = 1e-3;
};

ExperimentRecord blow_up_record(const CounterexampleInstance& inst, const BlowUpFields& fields, double s,
                                const TrialThresholds& thresholds = {});

ExperimentRecord blow_up_trial(const CounterexampleInstance& inst, double s, const TimeLadder& ladder,
                               const TrialThresholds& thresholds = {}, const QuadratureOptions& opts = {});

/// Record of an instance that could not be built or evaluated: NaN numbers, feasible = false.
ExperimentRecord infeasible_record(double a, double gamma, double s, double v, const std::string& error);

/// Largest tested v such that the F and G checks pass for it and every smaller tested v.
std::optional<double> certified_v0(const std::vector<ExperimentRecord>& records);

}  // namespace ctmax
