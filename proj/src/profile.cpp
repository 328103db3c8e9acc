#include "ctmax/profile.hpp"

#include <algorithm>
#include <cmath>

namespace ctmax {

namespace {

void require_finite(const ComplexVector& v, const char* what) {
    for (Index j = 0; j < v.size(); ++j) {
        if (!std::isfinite(v(j).real()) || !std::isfinite(v(j).imag()))
            throw DomainError(std::string(what) + " contains a non-finite value");
    }
}

}  // namespace

FrequencyProfile::FrequencyProfile(FrequencyGrid grid, ComplexVector values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.count()) throw DomainError("profile length does not match its grid");
    require_finite(values_, "frequency profile");
}

FrequencyProfile FrequencyProfile::sample(const FrequencyGrid& grid, ProfileSource source) {
    ComplexVector v(grid.count());
    for (Index j = 0; j < grid.count(); ++j) v(j) = source(grid.node(j));
    FrequencyProfile out(grid, std::move(v));
    out.source_ = std::move(source);
    return out;
}

FrequencyProfile FrequencyProfile::zero(const FrequencyGrid& grid) {
    return sample(grid, [](double) { return Complex{}; });
}

FrequencyProfile FrequencyProfile::refined() const {
    if (!source_) throw CertificateError("profile has no source and cannot be refined");
    return sample(grid_.refined(), source_);
}

double FrequencyProfile::l1_mass() const {
    return trapezoid_weights(grid_.count(), grid_.spacing()).dot(values_.cwiseAbs());
}

FrequencyProfile FrequencyProfile::scaled(Complex c) const {
    FrequencyProfile out(grid_, values_ * c);
    if (source_) {
        auto src = source_;
        out.source_ = [src, c](double xi) { return c * src(xi); };
    }
    return out;
}

FrequencyProfile operator+(const FrequencyProfile& lhs, const FrequencyProfile& rhs) {
    if (!(lhs.grid_ == rhs.grid_)) throw DomainError("profiles live on different grids");
    FrequencyProfile out(lhs.grid_, lhs.values_ + rhs.values_);
    if (lhs.source_ && rhs.source_) {
        auto l = lhs.source_;
        auto r = rhs.source_;
        out.source_ = [l, r](double xi) { return l(xi) + r(xi); };
    }
    return out;
}

SpatialField::SpatialField(SpatialGrid g, ComplexVector v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.count()) throw DomainError("field length does not match its grid");
    require_finite(values, "spatial field");
}

EvolutionParams::EvolutionParams(double a_, double gamma_, SigmaMode mode, double sigma)
    : a(a_), gamma(gamma_), sigma_mode(mode), sigma_value(sigma) {
    if (!(a > 1.0)) throw DomainError("dispersion exponent a must exceed 1");
    if (!(gamma > 0.0)) throw DomainError("time power gamma must be positive");
    if (mode == SigmaMode::explicit_value && !(sigma >= 0.0))
        throw DomainError("explicit damping sigma must be nonnegative");
}

double EvolutionParams::sigma(double t) const {
    switch (sigma_mode) {
        case SigmaMode::none: return 0.0;
        case SigmaMode::power: return std::pow(t, gamma);
        case SigmaMode::explicit_value: return sigma_value;
        case SigmaMode::path: {
            const double s = sigma_path(t);
            if (!(s >= 0.0)) throw DomainError("damping path must be nonnegative");
            return s;
        }
    }
    return 0.0;
}

EvolutionParams EvolutionParams::along_path(double a, std::function<double(double)> g) {
    if (!g) throw DomainError("damping path is empty");
    EvolutionParams p(a, 1.0, SigmaMode::path);
    p.sigma_path = std::move(g);
    return p;
}

void HalvingCertificate::absorb(const HalvingCertificate& other) {
    if (other.relative() > relative()) {
        max_deviation = other.max_deviation;
        scale = other.scale;
    }
    rtol = std::max(rtol, other.rtol);
    passed = passed && other.passed;
    refinements = std::max(refinements, other.refinements);
    nodes = std::max(nodes, other.nodes);
}

}  // namespace ctmax
