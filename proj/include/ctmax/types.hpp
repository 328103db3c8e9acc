#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace ctmax {

using Index = Eigen::Index;
using Complex = std::complex<double>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealVector = Vector<double>;
using ComplexVector = Vector<Complex>;
using ComplexMatrix = Matrix<Complex>;

inline constexpr double kPi = std::numbers::pi;

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (a <= 1, t outside (0,1), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The frequency step is too coarse for the phase being integrated.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// A halving check could not be made to pass within the node budget.
class CertificateError : public Error {
public:
    using Error::Error;
};

/// A documented precondition (ladder coverage, g <= h, ...) does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace ctmax
