// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <histphase/hilbert.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace histphase {

double wrap_angle(double angle) {
  double a = std::remainder(angle, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

double angle_distance(double a, double b) {
  return std::abs(std::remainder(a - b, 2.0 * std::numbers::pi));
}

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + ": matrix must be square and nonempty");
  }
}

void require_hermitian(const CMatrix& m, const char* what) {
  const double defect = max_abs(m - m.adjoint());
  if (defect > tol::kHermitian) {
    std::ostringstream os;
    os << what << ": not Hermitian (defect " << defect << ")";
    throw InvariantError(os.str());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw DimensionError("state vector must have dim >= 1");
  const double n = amps_.norm();
  if (std::abs(n - 1.0) > tol::kNorm) {
    std::ostringstream os;
    os << "state vector not normalized (norm " << n << ")";
    throw InvariantError(os.str());
  }
}

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index k) {
  if (k < 0 || k >= dim) throw DimensionError("basis index out of range");
  CVector v = CVector::Zero(dim);
  v[k] = 1.0;
  return StateVector(std::move(v), Trusted{});
}

StateVector StateVector::with_phase(double phi) const {
  return StateVector(amps_ * std::polar(1.0, phi), Trusted{});
}

StateVector normalize(const CVector& v) {
  const double n = v.norm();
  if (v.size() == 0 || !(n > 0.0) || !std::isfinite(n)) {
    throw InvariantError("cannot normalize null vector");
  }
  return StateVector(v / n, StateVector::Trusted{});
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("inner product between incompatible spaces");
  }
  return a.amplitudes().dot(b.amplitudes());  // Eigen conjugates the left operand
}

bool Ray::operator==(const Ray& other) const {
  if (dim() != other.dim()) return false;
  return 1.0 - std::abs(inner_product(rep_, other.rep_)) <= tol::kRayEquality;
}

// ---------------------------------------------------------------------------
// Projector / DensityMatrix / UnitaryMatrix

Projector::Projector(CMatrix matrix) : m_(std::move(matrix)) {
  require_square(m_, "projector");
  require_hermitian(m_, "projector");
  const double idem = max_abs(m_ * m_ - m_);
  if (idem > tol::kIdempotent) {
    std::ostringstream os;
    os << "projector: not idempotent (defect " << idem << ")";
    throw InvariantError(os.str());
  }
  const double tr = m_.trace().real();
  rank_ = static_cast<int>(std::lround(tr));
  if (std::abs(tr - rank_) > tol::kTrace) {
    throw InvariantError("projector: trace is not an integer");
  }
}

Projector Projector::identity(Eigen::Index dim) {
  return Projector(CMatrix::Identity(dim, dim));
}

DensityMatrix::DensityMatrix(CMatrix matrix) : m_(std::move(matrix)) {
  require_square(m_, "density matrix");
  require_hermitian(m_, "density matrix");
  if (std::abs(m_.trace() - Complex(1.0)) > tol::kDensityTrace) {
    throw InvariantError("density matrix: trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < tol::kDensityEigen) {
    throw InvariantError("density matrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

UnitaryMatrix::UnitaryMatrix(CMatrix matrix) : m_(std::move(matrix)) {
  require_square(m_, "unitary");
  const double defect =
      max_abs(m_.adjoint() * m_ - CMatrix::Identity(m_.rows(), m_.cols()));
  if (defect > tol::kUnitary) {
    std::ostringstream os;
    os << "matrix is not unitary (defect " << defect << ")";
    throw InvariantError(os.str());
  }
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
  return UnitaryMatrix(CMatrix::Identity(dim, dim));
}

// ---------------------------------------------------------------------------
// Operations

Projector projector_from_ray(const Ray& r) {
  const CVector& v = r.representative().amplitudes();
  CMatrix p = v * v.adjoint();
  // Exact Hermitian symmetry; the diagonal of v v† is real only up to rounding.
  p = 0.5 * (p + p.adjoint()).eval();
  return Projector(std::move(p));
}

double fs_distance(const Ray& a, const Ray& b) {
  const double overlap = std::abs(inner_product(a.representative(), b.representative()));
  return std::acos(std::min(1.0, overlap));
}

Ray geodesic_interpolate(const Ray& a, const Ray& b, double s) {
  const CVector& va = a.representative().amplitudes();
  const CVector& vb = b.representative().amplitudes();
  if (va.size() != vb.size()) throw DimensionError("geodesic between incompatible spaces");
  const Complex c = va.dot(vb);
  const double mod = std::abs(c);
  if (mod <= tol::kOrthogonal) {
    throw UndefinedError("geodesic undefined / non-unique between orthogonal rays");
  }
  const CVector vb_in_phase = vb * (std::conj(c) / mod);
  const double omega = std::acos(std::min(1.0, mod));
  CVector out;
  if (omega < 1e-9) {
    out = (1.0 - s) * va + s * vb_in_phase;
  } else {
    const double so = std::sin(omega);
    out = (std::sin((1.0 - s) * omega) / so) * va + (std::sin(s * omega) / so) * vb_in_phase;
  }
  return Ray(normalize(out));
}

std::vector<StateVector> orthonormal_basis_of(const Projector& p) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(p.matrix());
  std::vector<StateVector> basis;
  basis.reserve(static_cast<std::size_t>(p.rank()));
  // Eigenvalues ascend; the range of P is the eigenvalue-one block at the end.
  const Eigen::Index d = p.dim();
  for (Eigen::Index k = d - p.rank(); k < d; ++k) {
    basis.push_back(normalize(es.eigenvectors().col(k)));
  }
  return basis;
}

CMatrix outer_sum(std::span<const StateVector> vectors) {
  if (vectors.empty()) throw DimensionError("outer_sum of an empty list");
  const Eigen::Index d = vectors.front().dim();
  CMatrix m = CMatrix::Zero(d, d);
  for (const auto& v : vectors) {
    if (v.dim() != d) throw DimensionError("outer_sum: mixed dimensions");
    m += v.amplitudes() * v.amplitudes().adjoint();
  }
  return m;
}

}  // namespace histphase
