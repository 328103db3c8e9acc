#pragma once

#include <span>
#include <vector>

#include "ctmax/grid.hpp"
#include "ctmax/profile.hpp"

namespace ctmax {

/// sup over a time ladder of |P^t f| on a spatial grid.
struct MaximalField {
    SpatialGrid base;
    RealVector sup_values;
    /// Attaining ladder time per node (smallest one on ties).
    RealVector argmax_t;
    std::vector<Index> argmax_index;
    /// |P^{t_k} f(x_i)| at a requested ladder index k = track[i]; NaN where none was requested.
    RealVector tracked;
    HalvingCertificate certificate;
};

/// Pointwise maximum of |P^t f| over the ladder. `track`, if nonempty, holds one ladder
/// index (or -1) per node of xs whose modulus is copied into MaximalField::tracked.
MaximalField maximal_field(const FrequencyProfile& profile, const EvolutionParams& params,
                           const TimeLadder& ladder, const SpatialGrid& xs, const QuadratureOptions& opts = {},
                           std::span<const Index> track = {});

/// eta(x/N) \int \hat f(xi) e^{i t(x)|xi|^a} e^{-sigma(t(x))|xi|^a} e^{i x xi} eta(xi/N) dxi,
/// eta the unit plateau bump, with one time t_map[i] per node of xs.
Certified<SpatialField> linearized_evolution(const FrequencyProfile& profile, const EvolutionParams& params,
                                             const RealVector& t_map, double N, const SpatialGrid& xs,
                                             const QuadratureOptions& opts = {});

enum class NormKind { strong, weak };

/// ||sup_t |P^t f| ||_{L^2(region)} (or the weak quasinorm) over ||f||_{H^s}.
double ratio_statistic(const FrequencyProfile& profile, const EvolutionParams& params, const TimeLadder& ladder,
                       const SpatialGrid& xs, double s, const Region& region, NormKind kind,
                       const QuadratureOptions& opts = {});
/// Same quotient for an already computed field. Throws PreconditionError if sobolev <= 0.
double ratio_statistic(const MaximalField& field, double sobolev, const Region& region, NormKind kind);

/// Relative change of the maximal field's L^2 norm when the ladder count is doubled.
struct LadderCertificate {
    double l2 = 0.0;
    double l2_doubled = 0.0;
    double relative_change = 0.0;
    double tolerance = 0.01;
    bool passed = false;
};

LadderCertificate ladder_refinement_check(const FrequencyProfile& profile, const EvolutionParams& params,
                                          const TimeLadder& ladder, const SpatialGrid& xs,
                                          const Region& region = {}, double tolerance = 0.01,
                                          const QuadratureOptions& opts = {});

}  // namespace ctmax
