#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace coherekit {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Numerical tolerances shared across modules. Checks never loosen these at runtime.
namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double kraus_completeness = 1e-9;
inline constexpr double branch_prune = 1e-12;
inline constexpr double nonzero = 1e-12;
inline constexpr double measure_clamp = 1e-9;
inline constexpr double closed_form = 1e-9;
inline constexpr double optimization = 1e-4;
inline constexpr double gaussian = 1e-9;
inline constexpr double uncertainty = 1e-9;
inline constexpr double symmetric_cov = 1e-10;
inline constexpr double symplectic_pairing = 1e-8;
inline constexpr double symplectic_floor = 1e-8;
inline constexpr double feasibility = 1e-9;
}  // namespace tol

/// Malformed input: bad JSON, wrong shapes, non-finite numbers, unknown names.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value that parsed correctly but violates a state/channel invariant.
class InvalidState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside an operation's domain (dimension mismatch, p outside [0,1], ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace coherekit
