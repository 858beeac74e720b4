// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <histphase/hilbert.hpp>

#include <cstdint>
#include <random>

namespace histphase {

/// Seedable generator for randomized scenarios and property sweeps
/// (mt19937_64; the seed is recorded in every randomized output).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Complex Gaussian vector, unnormalized.
CVector random_gaussian(Rng& rng, Eigen::Index dim);

/// Haar-random unit vector.
StateVector random_state(Rng& rng, Eigen::Index dim);

/// Hermitian matrix with spectral norm `norm`.
CMatrix random_hermitian(Rng& rng, Eigen::Index dim, double norm = 1.0);

/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
UnitaryMatrix random_unitary(Rng& rng, Eigen::Index dim);

/// Projector onto a random rank-`rank` subspace.
Projector random_projector(Rng& rng, Eigen::Index dim, int rank);

/// Full-rank random density matrix (normalized Wishart).
DensityMatrix random_density(Rng& rng, Eigen::Index dim);

}  // namespace histphase
