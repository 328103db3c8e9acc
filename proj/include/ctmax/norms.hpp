#pragma once

#include "ctmax/profile.hpp"

namespace ctmax {

enum class SobolevKind { homogeneous, inhomogeneous };

/// (\int |\hat f|^2 w)^{1/2} with w = |xi|^{2s} or (1 + xi^2)^s.
Certified<double> sobolev_norm(const FrequencyProfile& profile, double s, SobolevKind kind,
                               const QuadratureOptions& opts = QuadratureOptions::for_norms());

/// Trapezoid L^2 norm of |values| over the nodes of `region`.
Certified<double> l2_norm(const SpatialGrid& grid, const RealVector& modulus, const Region& region = {});
inline Certified<double> l2_norm(const SpatialField& field, const Region& region = {}) {
    return l2_norm(field.grid, field.modulus(), region);
}

/// sup_lambda lambda |{x in region : |f(x)| > lambda}|^{1/2}, the measure of a node set
/// being the sum of its trapezoid weights. The supremum is taken exactly over the
/// distribution function's jumps.
double weak_l2_quasinorm(const SpatialGrid& grid, const RealVector& modulus, const Region& region = {});
inline double weak_l2_quasinorm(const SpatialField& field, const Region& region = {}) {
    return weak_l2_quasinorm(field.grid, field.modulus(), region);
}

/// Fraction of the L^2 mass carried by the outer 10% of the grid (5% at each end).
double tail_mass_fraction(const SpatialGrid& grid, const RealVector& modulus);

}  // namespace ctmax
