// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <histphase/random.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace histphase {

CVector random_gaussian(Rng& rng, Eigen::Index dim) {
  CVector v(dim);
  for (Eigen::Index k = 0; k < dim; ++k) v[k] = Complex(rng.normal(), rng.normal());
  return v;
}

StateVector random_state(Rng& rng, Eigen::Index dim) { return normalize(random_gaussian(rng, dim)); }

CMatrix random_hermitian(Rng& rng, Eigen::Index dim, double norm) {
  CMatrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) g.col(j) = random_gaussian(rng, dim);
  CMatrix h = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  const double radius = es.eigenvalues().cwiseAbs().maxCoeff();
  h *= norm / radius;
  return 0.5 * (h + h.adjoint());
}

UnitaryMatrix random_unitary(Rng& rng, Eigen::Index dim) {
  CMatrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) g.col(j) = random_gaussian(rng, dim);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    q.col(k) *= d / std::abs(d);
  }
  return UnitaryMatrix(q);
}

Projector random_projector(Rng& rng, Eigen::Index dim, int rank) {
  if (rank < 0 || rank > dim) throw DimensionError("projector rank out of range");
  const CMatrix u = random_unitary(rng, dim).matrix();
  const CMatrix cols = u.leftCols(rank);
  CMatrix p = cols * cols.adjoint();
  p = 0.5 * (p + p.adjoint()).eval();
  return Projector(p);
}

DensityMatrix random_density(Rng& rng, Eigen::Index dim) {
  CMatrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) g.col(j) = random_gaussian(rng, dim);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(rho);
}

}  // namespace histphase
