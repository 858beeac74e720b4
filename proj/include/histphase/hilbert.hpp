// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hilbert.hpp
 * @brief Finite-dimensional state-space objects: normalized vectors, rays,
 *        projectors, density matrices and unitaries.
 *
 * Every type validates its invariants on construction and is immutable
 * afterwards, so values can be shared freely between threads.
 */

#pragma once

#include <histphase/types.hpp>

#include <span>
#include <vector>

namespace histphase {

/// Unit-norm vector in C^d.
class StateVector {
 public:
  /// Validates that `amplitudes` already has unit norm (within tol::kNorm).
  explicit StateVector(CVector amplitudes);

  /// Basis vector e_k in C^dim.
  static StateVector basis(Eigen::Index dim, Eigen::Index k);

  const CVector& amplitudes() const { return amps_; }
  Eigen::Index dim() const { return amps_.size(); }
  Complex operator[](Eigen::Index k) const { return amps_[k]; }

  /// e^{iφ}|ψ⟩.
  StateVector with_phase(double phi) const;

 private:
  struct Trusted {};
  StateVector(CVector amplitudes, Trusted) : amps_(std::move(amplitudes)) {}
  friend StateVector normalize(const CVector& v);

  CVector amps_;
};

/// Scales `v` to unit norm. Throws InvariantError on the null vector.
StateVector normalize(const CVector& v);

/// ⟨a|b⟩ = Σ_k conj(a_k) b_k.
Complex inner_product(const StateVector& a, const StateVector& b);

/// Phase-equivalence class of a normalized vector, i.e. a point of PH.
class Ray {
 public:
  explicit Ray(StateVector representative) : rep_(std::move(representative)) {}

  const StateVector& representative() const { return rep_; }
  Eigen::Index dim() const { return rep_.dim(); }

  /// Equal iff 1 − |⟨ψ|φ⟩| ≤ tol::kRayEquality.
  bool operator==(const Ray& other) const;

 private:
  StateVector rep_;
};

/// Hermitian idempotent matrix; rank is the rounded trace.
class Projector {
 public:
  explicit Projector(CMatrix matrix);

  static Projector identity(Eigen::Index dim);

  const CMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  int rank() const { return rank_; }
  bool fine_grained() const { return rank_ == 1; }

 private:
  CMatrix m_;
  int rank_ = 0;
};

/// Positive semidefinite, unit-trace Hermitian matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix matrix);

  static DensityMatrix pure(const StateVector& psi);

  const CMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  CMatrix m_;
};

/// Square matrix with U†U = 1 (elementwise within tol::kUnitary).
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(CMatrix matrix);

  static UnitaryMatrix identity(Eigen::Index dim);

  const CMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  CMatrix m_;
};

/// |ψ⟩⟨ψ| for the ray's representative; independent of the phase choice.
Projector projector_from_ray(const Ray& r);

/// Fubini–Study distance arccos|⟨a|b⟩| in [0, π/2].
double fs_distance(const Ray& a, const Ray& b);

/// Point at fraction `s` along the Fubini–Study geodesic from `a` to `b`.
///
/// The representative of `b` is first rotated so that its overlap with `a` is
/// real and positive; the result is then the spherical interpolation of the
/// two in-phase lifts. The returned representative is in phase with `a`.
/// Throws UndefinedError when the endpoints are orthogonal, since the
/// geodesic is not unique there.
Ray geodesic_interpolate(const Ray& a, const Ray& b, double s);

/// Orthonormal basis of range(P), rank(P) vectors, from the eigenvalue-one
/// eigenspace of P.
std::vector<StateVector> orthonormal_basis_of(const Projector& p);

/// Σ_r |ψ^r⟩⟨ψ^r|.
CMatrix outer_sum(std::span<const StateVector> vectors);

}  // namespace histphase
