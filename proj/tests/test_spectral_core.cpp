#include <doctest.h>

#include <cmath>
#include <random>

#include "ctmax/norms.hpp"
#include "ctmax/propagator.hpp"

using namespace ctmax;

namespace {

const FrequencyGrid kGaussGrid = FrequencyGrid::symmetric(8.0, 513);
const SpatialGrid kXs = SpatialGrid::symmetric(10.0, 201);

FrequencyProfile gaussian() {
    return FrequencyProfile::sample(kGaussGrid, [](double xi) { return Complex(std::exp(-xi * xi)); });
}

// \int e^{-A xi^2 + i x xi} dxi = sqrt(pi/A) e^{-x^2/(4A)}, principal branch.
Complex complex_gaussian(double x, double t, double sigma) {
    const Complex A(1.0 + sigma, -t);
    return std::sqrt(kPi / A) * std::exp(-x * x / (4.0 * A));
}

FrequencyProfile random_profile(std::mt19937_64& rng, const FrequencyGrid& grid = kGaussGrid) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double c1 = u(rng), c2 = u(rng), shift = u(rng), width = 1.0 + 0.5 * u(rng);
    return FrequencyProfile::sample(grid, [=](double xi) {
        return Complex(c1, c2) * std::exp(-(xi - shift) * (xi - shift) / width);
    });
}

}  // namespace

TEST_CASE("synthesize of the zero profile vanishes") {
    auto f = synthesize(FrequencyProfile::zero(kGaussGrid), kXs);
    CHECK(f.value.values.cwiseAbs().maxCoeff() == 0.0);
    CHECK(f.certificate.passed);
}

TEST_CASE("synthesize matches the Gaussian Fourier integral") {
    auto f = synthesize(gaussian(), kXs);
    CHECK(f.certificate.passed);
    const Index mid = kXs.count() / 2;
    CHECK(kXs.node(mid) == 0.0);
    CHECK(std::abs(f.value.values(mid) - std::sqrt(kPi)) < 1e-6 * std::sqrt(kPi));
    for (Index i = 0; i < kXs.count(); ++i) {
        const double x = kXs.node(i);
        CHECK(std::abs(f.value.values(i) - std::sqrt(kPi) * std::exp(-x * x / 4.0)) < 1e-6 * std::sqrt(kPi));
    }
}

TEST_CASE("evaluate_evolution matches the complex Gaussian") {
    for (double t : {0.05, 0.3, 0.9}) {
        for (double sigma : {0.0, 0.2, 1.5}) {
            auto f = evaluate_evolution(gaussian(), EvolutionParams::fixed_damping(2.0, sigma), t, kXs);
            CHECK(f.certificate.passed);
            for (Index i = 0; i < kXs.count(); i += 7) {
                const Complex expected = complex_gaussian(kXs.node(i), t, sigma);
                CHECK(std::abs(f.value.values(i) - expected) <= 1e-6 * std::abs(complex_gaussian(0, t, sigma)));
            }
        }
    }
}

TEST_CASE("small-time limit reproduces the synthesized datum") {
    auto f0 = synthesize(gaussian(), kXs);
    auto ft = evaluate_evolution(gaussian(), EvolutionParams::fixed_damping(2.0, 0.0), 1e-6, kXs);
    CHECK((f0.value.values - ft.value.values).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("damped evolution contracts the L2 norm and obeys the modulus bound") {
    std::mt19937_64 rng(7);
    const SpatialGrid wide = SpatialGrid::symmetric(40.0, 1601);
    const FrequencyGrid fine = FrequencyGrid::symmetric(8.0, 2049);
    for (int trial = 0; trial < 5; ++trial) {
        auto prof = random_profile(rng, fine);
        const double f_norm = l2_norm(synthesize(prof, wide).value).value;
        for (double t : {0.01, 0.2, 0.7}) {
            auto ft = evaluate_evolution(prof, EvolutionParams::complex_time(2.0, 2.0), t, wide);
            CHECK(l2_norm(ft.value).value <= f_norm * (1.0 + 1e-9));
            CHECK(ft.value.values.cwiseAbs().maxCoeff() <= prof.l1_mass() * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("evolution is linear in the profile") {
    std::mt19937_64 rng(11);
    const auto params = EvolutionParams::complex_time(1.5, 3.0);
    // Linearity of the discrete operator: no refinement, so all three use the same nodes.
    QuadratureOptions fixed;
    fixed.max_refinements = 0;
    fixed.require_certificate = false;
    for (int trial = 0; trial < 5; ++trial) {
        auto f = random_profile(rng);
        auto g = random_profile(rng);
        const Complex alpha(0.3, -1.2), beta(-2.0, 0.5);
        auto lhs = evaluate_evolution(f.scaled(alpha) + g.scaled(beta), params, 0.4, kXs, fixed).value.values;
        auto rhs = (alpha * evaluate_evolution(f, params, 0.4, kXs, fixed).value.values +
                    beta * evaluate_evolution(g, params, 0.4, kXs, fixed).value.values)
                       .eval();
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + rhs.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("conjugate-symmetric profiles synthesize to real fields") {
    auto prof = FrequencyProfile::sample(kGaussGrid, [](double xi) {
        return std::exp(-xi * xi) * Complex(std::cos(xi), std::sin(3.0 * xi));
    });
    auto f = synthesize(prof, kXs);
    CHECK(f.value.values.imag().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("even profiles evolve to even fields") {
    auto prof = FrequencyProfile::sample(kGaussGrid, [](double xi) {
        return std::exp(-xi * xi) * Complex(1.0 + xi * xi, std::cos(2.0 * xi));
    });
    auto ft = evaluate_evolution(prof, EvolutionParams::complex_time(1.3, 2.0), 0.5, kXs).value.values;
    CHECK((ft - ft.reverse()).cwiseAbs().maxCoeff() < 1e-12 * ft.cwiseAbs().maxCoeff());
}

TEST_CASE("coarse frequency grids are rejected with the offending bound") {
    auto prof = FrequencyProfile::sample(FrequencyGrid::symmetric(8.0, 33),
                                         [](double xi) { return Complex(std::exp(-xi * xi)); });
    CHECK_THROWS_AS(synthesize(prof, kXs), ResolutionError);
    try {
        synthesize(prof, kXs);
    } catch (const ResolutionError& e) {
        CHECK(std::string(e.what()).find("step must be <=") != std::string::npos);
    }
}

TEST_CASE("evaluation time must lie in (0,1)") {
    CHECK_THROWS_AS(evaluate_evolution(gaussian(), EvolutionParams::complex_time(2, 2), 0.0, kXs), DomainError);
    CHECK_THROWS_AS(evaluate_evolution(gaussian(), EvolutionParams::complex_time(2, 2), 1.0, kXs), DomainError);
}

TEST_CASE("doubling the frequency grid leaves values within tolerance") {
    auto coarse = evaluate_evolution(gaussian(), EvolutionParams::complex_time(2.0, 2.0), 0.3, kXs).value.values;
    auto fine = evaluate_evolution(gaussian().refined(), EvolutionParams::complex_time(2.0, 2.0), 0.3, kXs)
                    .value.values;
    CHECK((coarse - fine).cwiseAbs().maxCoeff() < 1e-6 * fine.cwiseAbs().maxCoeff());
}

TEST_CASE("uncertifiable sampled profiles raise CertificateError") {
    // A hard edge inside the grid cannot pass a 1e-6 halving check and has no source to refine.
    const FrequencyGrid grid = FrequencyGrid::symmetric(2.0, 101);
    ComplexVector v = ComplexVector::Zero(grid.count());
    for (Index j = 0; j < grid.count(); ++j)
        if (std::abs(grid.node(j)) <= 1.0) v(j) = 1.0;
    FrequencyProfile hard(grid, v);
    CHECK_THROWS_AS(synthesize(hard, SpatialGrid::symmetric(3.0, 31)), CertificateError);
    QuadratureOptions lax;
    lax.require_certificate = false;
    CHECK_FALSE(synthesize(hard, SpatialGrid::symmetric(3.0, 31), lax).certificate.passed);
}

TEST_CASE("Sobolev norms of the unit plateau") {
    const FrequencyGrid grid = FrequencyGrid::symmetric(1.0, 2001);
    auto plateau = FrequencyProfile::sample(grid, [](double) { return Complex(1.0); });
    auto s0 = sobolev_norm(plateau, 0.0, SobolevKind::inhomogeneous);
    CHECK(s0.certificate.passed);
    CHECK(s0.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));
    CHECK(sobolev_norm(plateau, 0.0, SobolevKind::homogeneous).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));
    CHECK(sobolev_norm(plateau, 1.0, SobolevKind::inhomogeneous).value ==
          doctest::Approx(std::sqrt(8.0 / 3.0)).epsilon(1e-4));
    const Complex c(-3.0, 4.0);
    CHECK(sobolev_norm(plateau.scaled(c), 0.7, SobolevKind::inhomogeneous).value ==
          doctest::Approx(5.0 * sobolev_norm(plateau, 0.7, SobolevKind::inhomogeneous).value).epsilon(1e-12));
}

TEST_CASE("negative homogeneous order through the origin is an error") {
    auto plateau = FrequencyProfile::sample(FrequencyGrid::symmetric(1.0, 101), [](double) { return Complex(1.0); });
    CHECK_THROWS_AS(sobolev_norm(plateau, -0.2, SobolevKind::homogeneous), DomainError);
    auto shifted = FrequencyProfile::sample(FrequencyGrid(1.0, 2.0, 101), [](double) { return Complex(1.0); });
    // \int_1^2 xi^{-1} dxi = log 2
    CHECK(sobolev_norm(shifted, -0.5, SobolevKind::homogeneous).value ==
          doctest::Approx(std::sqrt(std::log(2.0))).epsilon(1e-4));
}

TEST_CASE("L2 norms on spatial grids") {
    const SpatialGrid g = SpatialGrid::symmetric(1.0, 201);
    CHECK(l2_norm(SpatialField::constant(g, 1.0)).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(l2_norm(SpatialField::constant(g, 0.0)).value == 0.0);
    CHECK(l2_norm(SpatialField::constant(g, 1.0), Region::interval(0.0, 1.0)).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(l2_norm(SpatialField::constant(g, 1.0), Region::interval(-2.0, 0.5)), DomainError);
}

TEST_CASE("Plancherel under the unnormalized convention") {
    const SpatialGrid wide = SpatialGrid::symmetric(30.0, 1201);
    auto prof = FrequencyProfile::sample(FrequencyGrid::symmetric(8.0, 1025),
                                         [](double xi) { return Complex(std::exp(-xi * xi)); });
    const double lhs = l2_norm(synthesize(prof, wide).value).value;
    const double rhs = std::sqrt(2.0 * kPi) * sobolev_norm(prof, 0.0, SobolevKind::homogeneous).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
}

TEST_CASE("weak L2 quasinorm") {
    const SpatialGrid g = SpatialGrid::symmetric(1.0, 201);
    CHECK(weak_l2_quasinorm(SpatialField::constant(g, 1.0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(weak_l2_quasinorm(SpatialField::constant(g, 0.0)) == 0.0);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const SpatialGrid big = SpatialGrid::symmetric(5.0, 401);
    for (int trial = 0; trial < 50; ++trial) {
        ComplexVector v(big.count());
        const double power = 1.0 + 3.0 * std::abs(u(rng));
        for (Index i = 0; i < big.count(); ++i) v(i) = Complex(u(rng), u(rng)) * std::pow(std::abs(u(rng)), power);
        SpatialField f(big, v);
        for (Region r : {Region::whole_line(), Region::interval(-1.0, 1.0), Region::interval(0.3, 4.2)})
            CHECK(weak_l2_quasinorm(f, r) <= l2_norm(f, r).value * (1.0 + 1e-12));
    }
}
