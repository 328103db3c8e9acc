#pragma once

#include <functional>
#include <span>

#include "ctmax/profile.hpp"

namespace ctmax {

/// Largest |d/dxi phase| over the part of the damped profile that survives the
/// amplitude cutoff: t * a * Xi_eff^{a-1} + x_extent.
double phase_derivative_bound(const FrequencyProfile& profile, const EvolutionParams& params, double t,
                              double x_extent, const QuadratureOptions& opts = {});

/// Throws ResolutionError unless spacing * phase_derivative_bound <= opts.phase_step.
void check_resolution(const FrequencyProfile& profile, const EvolutionParams& params, double t,
                      double x_extent, const QuadratureOptions& opts = {});

/// Multiplier e^{i t |xi|^a} e^{-sigma |xi|^a} on the profile grid.
ComplexVector evolution_multiplier(const FrequencyGrid& grid, const EvolutionParams& params, double t);

/// Receives consecutive row blocks of the (x by t) evaluation matrix.
using BlockSink = std::function<void(Index first_row, const ComplexMatrix& block)>;

/// Evaluate \int \hat f(xi) e^{i t|xi|^a} e^{-sigma(t)|xi|^a} e^{i x xi} dxi for every t in
/// `times` (t = 0 allowed) and every node of `xs`, one trapezoid pass plus its halving
/// check. No refinement; see evolve_certified.
HalvingCertificate evolve_blocks(const FrequencyProfile& profile, const EvolutionParams& params,
                                 std::span<const double> times, const SpatialGrid& xs,
                                 const QuadratureOptions& opts, const BlockSink& sink);

/// evolve_blocks inside a refinement loop: while the halving check fails and the
/// profile has a source, the frequency grid is halved and `reset` is called
/// before the blocks are produced again.
HalvingCertificate evolve_certified(const FrequencyProfile& profile, const EvolutionParams& params,
                                    std::span<const double> times, const SpatialGrid& xs,
                                    const QuadratureOptions& opts, const std::function<void()>& reset,
                                    const BlockSink& sink);

/// f(x) = \int \hat f(xi) e^{i x xi} dxi.
Certified<SpatialField> synthesize(const FrequencyProfile& profile, const SpatialGrid& xs,
                                   const QuadratureOptions& opts = {});

/// P^t f on xs for t in (0, 1).
Certified<SpatialField> evaluate_evolution(const FrequencyProfile& profile, const EvolutionParams& params,
                                           double t, const SpatialGrid& xs,
                                           const QuadratureOptions& opts = {});

/// Columns are P^{t_k} f for the ladder times.
Certified<ComplexMatrix> evolve_ladder(const FrequencyProfile& profile, const EvolutionParams& params,
                                       std::span<const double> times, const SpatialGrid& xs,
                                       const QuadratureOptions& opts = {});

}  // namespace ctmax
