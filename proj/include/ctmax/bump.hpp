#pragma once

namespace ctmax {

/// sigma(u) = psi(u) / (psi(u) + psi(1-u)), psi(u) = e^{-1/u} for u > 0 and 0 otherwise.
double smooth_step(double u);
double smooth_step_derivative(double u);

/// Even C^infinity plateau: 1 on [-R/2, R/2], 0 outside [-R, R],
/// smooth_step(2(R - |xi|)/R) in between.
class Bump {
public:
    explicit Bump(double outer_radius);

    double radius() const { return radius_; }
    double plateau_radius() const { return 0.5 * radius_; }

    double operator()(double xi) const;
    double derivative(double xi) const;
    /// \int |g'| (the bump rises once and falls once).
    double total_variation() const { return 2.0; }

private:
    double radius_;
};

}  // namespace ctmax
