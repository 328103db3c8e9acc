#include "ctmax/exponents.hpp"

#include <algorithm>
#include <cmath>

#include "ctmax/types.hpp"

namespace ctmax {

namespace {

void require_domain(double a, double gamma) {
    if (!(a > 1.0) || !std::isfinite(a)) throw DomainError("exponent needs a > 1");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("exponent needs gamma > 0");
}

}  // namespace

double critical_exponent(double a, double gamma) {
    require_domain(a, gamma);
    return 0.25 * a * std::max(0.0, 1.0 - 1.0 / gamma);
}

double local_critical_exponent(double a, double gamma) {
    return std::min(critical_exponent(a, gamma), 0.25);
}

double critical_gamma(double a) {
    if (!(a > 1.0)) throw DomainError("exponent needs a > 1");
    return a / (a - 1.0);
}

}  // namespace ctmax
