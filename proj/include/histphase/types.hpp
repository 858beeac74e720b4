// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace histphase {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Numerical tolerances shared across modules.
namespace tol {
inline constexpr double kNorm = 1e-12;          // |‖ψ‖ − 1| for a StateVector
inline constexpr double kRayEquality = 1e-10;   // 1 − |⟨ψ|φ⟩| for equal rays
inline constexpr double kHermitian = 1e-12;     // elementwise |A − A†|
inline constexpr double kIdempotent = 1e-10;    // elementwise |P² − P|
inline constexpr double kTrace = 1e-10;         // |Tr P − rank|
inline constexpr double kDensityTrace = 1e-12;
inline constexpr double kDensityEigen = -1e-10; // smallest admissible eigenvalue
inline constexpr double kUnitary = 1e-10;       // elementwise |U†U − 1|
inline constexpr double kOrthogonal = 1e-12;    // overlap modulus treated as zero
inline constexpr double kHistoryAlgebra = 1e-10; // exhaustive / exclusive defects
inline constexpr double kTimeMatch = 1e-12;     // relative, event time vs grid time
}  // namespace tol

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in spaces of different dimension, or sequences of
/// different length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a type invariant (not normalized, not Hermitian, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// A geometric quantity is undefined for the given input (orthogonal
/// endpoints, open path passed as a loop, ...).
class UndefinedError : public Error {
 public:
  using Error::Error;
};

/// Maximum elementwise modulus of a matrix.
inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Principal argument in (−π, π].
double wrap_angle(double angle);

/// Distance between two angles on the circle, in [0, π].
double angle_distance(double a, double b);

}  // namespace histphase
