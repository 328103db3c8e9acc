#include "ctmax/bump.hpp"

#include <cmath>

#include "ctmax/types.hpp"

namespace ctmax {

namespace {

double psi(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }
double psi_derivative(double u) { return u > 0.0 ? psi(u) / (u * u) : 0.0; }

}  // namespace

double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double p = psi(u), q = psi(1.0 - u);
    return p / (p + q);
}

double smooth_step_derivative(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double p = psi(u), q = psi(1.0 - u);
    const double den = p + q;
    return (psi_derivative(u) * q + p * psi_derivative(1.0 - u)) / (den * den);
}

Bump::Bump(double outer_radius) : radius_(outer_radius) {
    if (!(outer_radius > 0.0) || !std::isfinite(outer_radius))
        throw DomainError("bump radius must be positive");
}

double Bump::operator()(double xi) const {
    const double r = std::abs(xi);
    if (r <= plateau_radius()) return 1.0;
    if (r >= radius_) return 0.0;
    return smooth_step(2.0 * (radius_ - r) / radius_);
}

double Bump::derivative(double xi) const {
    const double r = std::abs(xi);
    if (r <= plateau_radius() || r >= radius_) return 0.0;
    const double d = -2.0 / radius_ * smooth_step_derivative(2.0 * (radius_ - r) / radius_);
    return xi < 0.0 ? -d : d;
}

}  // namespace ctmax
