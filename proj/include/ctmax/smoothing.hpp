#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "ctmax/grid.hpp"
#include "ctmax/maximal.hpp"
#include "ctmax/profile.hpp"

namespace ctmax {

/// Imaginary-part path t -> g(t), mapping [0,1] into [0,1].
struct PathSpec {
    std::function<double(double)> g;
    std::string tag;

    static PathSpec power(double p);
    static PathSpec zero();
    /// Throws DomainError unless g is finite and in [0,1] on the ladder times.
    void validate(const TimeLadder& ladder) const;
};

/// K(x) = (1/pi) \int_0^infty e^{-xi^a} cos(x xi) dxi, the kernel with transform e^{-|xi|^a}.
struct KernelOptions {
    double base_step = 1.0 / 256.0;
    double rtol = 1e-10;
    int max_refinements = 8;
};
Certified<SpatialField> kernel_K(double a, const SpatialGrid& xs, const KernelOptions& opts = {});

/// u^{-1} K(x/u) on xs, evaluated through kernel_K on the rescaled grid.
Certified<SpatialField> dilated_kernel(double a, double u, const SpatialGrid& xs, const KernelOptions& opts = {});
/// t^{-1} k(x/t) sampled on xs.
SpatialField dilate(const std::function<double(double)>& k, double t, const SpatialGrid& xs);

/// Columns S_a^{t + i g(t)} f on xs for the ladder times.
Certified<ComplexMatrix> evolve_along_path(const FrequencyProfile& profile, double a, const PathSpec& path,
                                           const TimeLadder& ladder, const SpatialGrid& xs,
                                           const QuadratureOptions& opts = {});

/// Values of K_u at the lattice offsets k dx, |k| <= m, of the grid xs, where m is n-1 cut
/// to |k dx| <= extent u. Size 2m+1, centered.
Certified<RealVector> kernel_lattice(double a, double u, const SpatialGrid& xs, double extent = 64.0,
                                     const KernelOptions& opts = {});

/// (F * K_u)(x_i) = sum_j w_j F(x_j) K_u(x_i - x_j), trapezoid weights w, for i in `out`.
template <typename Scalar>
Vector<Scalar> discrete_convolution(const Vector<Scalar>& F, const RealVector& lattice, const SpatialGrid& xs,
                                    const NodeRange& out) {
    const Index n = xs.count();
    const Index m = lattice.size() / 2;
    const RealVector w = trapezoid_weights(n, xs.spacing());
    Vector<Scalar> res(out.size());
    for (Index i = out.first; i <= out.last; ++i) {
        Scalar acc(0);
        const Index j0 = std::max<Index>(0, i - m), j1 = std::min<Index>(n - 1, i + m);
        for (Index j = j0; j <= j1; ++j) acc += w(j) * lattice(i - j + m) * F(j);
        res(i - out.first) = acc;
    }
    return res;
}

struct ConvolutionReport {
    double max_deviation = 0.0;
    /// rtol (||lhs||_inf + ||S^g f||_inf sum |K_u| w), worst over the ladder.
    double tolerance = 0.0;
    double worst_t = 0.0;
    bool passed = false;
    HalvingCertificate certificate;
};

/// Compares S^{t+ih(t)} f with (S^{t+ig(t)} f) * K_{(h-g)^{1/a}} on `inner` for every ladder t.
/// Throws PreconditionError if g > h somewhere on the ladder.
ConvolutionReport convolution_identity_check(const FrequencyProfile& profile, double a, const PathSpec& g,
                                             const PathSpec& h, const TimeLadder& ladder, const SpatialGrid& xs,
                                             const Region& inner, double rtol = 1e-6, double kernel_extent = 64.0,
                                             const QuadratureOptions& opts = {});

/// Centered maximal function over odd node windows: max over m of the mean of |f| on
/// nodes i-m .. i+m that lie in the grid.
RealVector hl_maximal(const RealVector& modulus);
inline SpatialField hl_maximal(const SpatialField& f) {
    return {f.grid, hl_maximal(f.modulus()).cast<Complex>()};
}

/// dx (Phi(0) + 2 sum_k Phi(k dx)), Phi the decreasing majorant of |K_u| on the lattice. Then
/// |F * K_u| <= constant * M F for every nonnegative F on the grid.
double kernel_average_constant(const RealVector& lattice, double dx);

struct DominationOptions {
    Index dilate_count = 128;
    /// The dilate ladder starts at max(dilate_min, 2 dx): narrower dilates are sub-grid spikes.
    double dilate_min = 1e-3;
    double dilate_max = 1.0 - 1e-3;
    double eps_fraction = 1e-3;
    /// Dilate lattices are cut at |y| <= kernel_extent u.
    double kernel_extent = 64.0;
    bool with_kernel_sup = true;
    KernelOptions kernel;
};

struct DominationReport {
    /// max_x L / (R + eps), L = sup_t |S^{t+ih} f|, R = M(sup_t |S^{t+ig} f|).
    double ratio = 0.0;
    double eps = 0.0;
    /// ||L||_2 / ||sup_t |S^{t+ig} f| ||_2 and the measured ||M F||_2 / ||F||_2.
    double l2_ratio = 0.0;
    double hl_l2_ratio = 0.0;
    /// max_x of sup_u |F * K_u| / (M F + eps) and the largest kernel_average_constant over the dilate ladder.
    double kernel_sup_ratio = 0.0;
    double kernel_constant = 0.0;
    /// Relative change of max_x sup_u |F * K_u| when every other dilate is dropped.
    double dilate_refinement_delta = 0.0;
    double dilate_min = 0.0;
    /// Largest |K(y)| y^2 beyond the lattice cut, a bound on the neglected kernel tail density.
    double kernel_tail = 0.0;
    bool certificate_passed = true;
    RealVector L;
    RealVector R;
};

DominationReport domination_check(const FrequencyProfile& profile, double a, const PathSpec& g, const PathSpec& h,
                                  const TimeLadder& ladder, const SpatialGrid& xs,
                                  const DominationOptions& dopts = {}, const QuadratureOptions& opts = {});

/// max over x of sup_t |A_t * K_{u_t}| - sup_u (sup_t |A_t|) * |K_u|, the u-sup running over `us`
/// and the u_t. Nonpositive when the exchange inequality holds.
double exchange_excess(const std::vector<ComplexVector>& A, const std::vector<double>& u_t,
                       const std::vector<double>& us, double a, const SpatialGrid& xs, double kernel_extent = 64.0,
                       const KernelOptions& opts = {});

}  // namespace ctmax
