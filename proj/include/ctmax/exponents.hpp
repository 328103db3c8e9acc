#pragma once

namespace ctmax {

/// a (1 - 1/gamma)^+ / 4. Throws DomainError unless a > 1 and gamma > 0.
double critical_exponent(double a, double gamma);
/// min(critical_exponent(a, gamma), 1/4).
double local_critical_exponent(double a, double gamma);
/// a / (a - 1), where the global and local exponents meet at 1/4.
double critical_gamma(double a);

}  // namespace ctmax
