#pragma once

#include <functional>

#include "ctmax/grid.hpp"

namespace ctmax {

/// Callable xi -> \hat f(xi). Profiles built from a source can be refined.
using ProfileSource = std::function<Complex(double)>;

/// Samples of \hat f on a compact frequency grid; \hat f is 0 outside it.
class FrequencyProfile {
public:
    FrequencyProfile(FrequencyGrid grid, ComplexVector values);

    static FrequencyProfile sample(const FrequencyGrid& grid, ProfileSource source);
    static FrequencyProfile zero(const FrequencyGrid& grid);

    const FrequencyGrid& grid() const { return grid_; }
    const ComplexVector& values() const { return values_; }
    bool refinable() const { return static_cast<bool>(source_); }
    const ProfileSource& source() const { return source_; }

    /// Resampled on the refined grid. Throws CertificateError without a source.
    FrequencyProfile refined() const;

    /// Trapezoid value of \int |\hat f|, the modulus bound of every damped propagator.
    double l1_mass() const;

    FrequencyProfile scaled(Complex c) const;
    friend FrequencyProfile operator+(const FrequencyProfile& lhs, const FrequencyProfile& rhs);

private:
    FrequencyGrid grid_;
    ComplexVector values_;
    ProfileSource source_;
};

/// Complex samples on a uniform spatial grid.
struct SpatialField {
    SpatialGrid grid;
    ComplexVector values;

    SpatialField(SpatialGrid g, ComplexVector v);
    static SpatialField constant(const SpatialGrid& g, Complex c) {
        return {g, ComplexVector::Constant(g.count(), c)};
    }
    RealVector modulus() const { return values.cwiseAbs(); }
};

enum class SigmaMode { none, power, explicit_value, path };

/// Which member of the complex-time family is applied: symbol |xi|^a,
/// damping e^{-sigma |xi|^a} with sigma = 0, t^gamma, a fixed value, or g(t) for a path g.
struct EvolutionParams {
    double a = 2.0;
    double gamma = 1.0;
    SigmaMode sigma_mode = SigmaMode::power;
    double sigma_value = 0.0;
    std::function<double(double)> sigma_path;

    EvolutionParams() = default;
    EvolutionParams(double a_, double gamma_, SigmaMode mode = SigmaMode::power, double sigma = 0.0);

    static EvolutionParams schrodinger_type(double a) { return {a, 1.0, SigmaMode::none}; }
    static EvolutionParams complex_time(double a, double gamma) { return {a, gamma, SigmaMode::power}; }
    static EvolutionParams fixed_damping(double a, double sigma) {
        return {a, 1.0, SigmaMode::explicit_value, sigma};
    }
    /// sigma(t) = g(t); g must be nonnegative on the times it is evaluated at.
    static EvolutionParams along_path(double a, std::function<double(double)> g);

    double sigma(double t) const;
};

struct QuadratureOptions {
    /// Largest admissible phase advance per frequency step.
    double phase_step = kPi / 4.0;
    /// Nodes whose damped amplitude falls below this fraction of max |\hat f|
    /// do not enter the phase-derivative bound.
    double amplitude_cutoff = 1e-17;
    /// Relative tolerance of the halving check.
    double rtol = 1e-6;
    /// Scale floor of the halving check, as a fraction of \int |\hat f|.
    double scale_floor = 1e-8;
    Index max_nodes = Index{1} << 24;
    int max_refinements = 6;
    /// Throw CertificateError when the check cannot be made to pass.
    bool require_certificate = true;

    /// Defaults for norms of experiment-scale profiles.
    static QuadratureOptions for_norms() {
        QuadratureOptions o;
        o.rtol = 1e-4;
        return o;
    }
};

/// Outcome of comparing a trapezoid sum with the same sum on every other node.
struct HalvingCertificate {
    double max_deviation = 0.0;
    double scale = 0.0;
    double rtol = 0.0;
    bool passed = true;
    int refinements = 0;
    Index nodes = 0;

    double relative() const { return scale > 0.0 ? max_deviation / scale : 0.0; }
    /// Combine certificates of independent pieces of one result.
    void absorb(const HalvingCertificate& other);
};

template <typename T>
struct Certified {
    T value;
    HalvingCertificate certificate;
};

}  // namespace ctmax
