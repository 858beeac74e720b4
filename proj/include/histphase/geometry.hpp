// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file geometry.hpp
 * @brief Geometric phases of sampled paths in projective Hilbert space.
 *
 * The finite-n geometric phase of a path [ψ_0], …, [ψ_n] is the argument of
 * the overlap product
 *
 *     ⟨ψ_0|ψ_n⟩ · ⟨ψ_n|ψ_{n-1}⟩ ⋯ ⟨ψ_1|ψ_0⟩,
 *
 * which is independent of the representatives chosen for each ray. The
 * closing factor ⟨ψ_0|ψ_n⟩ joins the endpoints by a geodesic, so for an
 * open path this is the phase of the geodesically closed loop. The
 * continuum Berry phase is only ever approached as a limit of this product
 * (see convergence_study).
 */

#pragma once

#include <histphase/hilbert.hpp>

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace histphase {

/// Time-stamped samples of a path in PH. Times strictly increase, all rays
/// share a dimension, and there are at least two samples.
class DiscretePath {
 public:
  DiscretePath(std::vector<double> times, std::vector<Ray> rays);

  /// Samples at t_k = k for k = 0..rays.size()-1.
  static DiscretePath uniform(std::vector<Ray> rays);

  const std::vector<double>& times() const { return times_; }
  const std::vector<Ray>& rays() const { return rays_; }
  std::size_t size() const { return rays_.size(); }
  Eigen::Index dim() const { return rays_.front().dim(); }
  const Ray& front() const { return rays_.front(); }
  const Ray& back() const { return rays_.back(); }

  DiscretePath reversed() const;

  /// Sum of Fubini–Study distances between consecutive samples.
  double fs_length() const;

 private:
  std::vector<double> times_;
  std::vector<Ray> rays_;
};

/// A complex phase factor together with its modulus and argument.
///
/// When the product vanishes (some overlap modulus ≤ tol::kOrthogonal) the
/// phase is undefined: magnitude and phase_factor are 0 and `angle` is empty.
struct PhaseResult {
  Complex phase_factor{0.0, 0.0};
  std::optional<double> angle;
  double magnitude = 0.0;

  bool valid() const { return angle.has_value(); }
  static PhaseResult from_product(Complex product, bool vanishing);
};

/// One row of a convergence study.
struct ConvergenceRow {
  int n_steps = 0;
  double angle = 0.0;
  double abs_error_vs_reference = 0.0;
};

/// Parameterized loop family s ∈ [0, 1] ↦ ray, with loop(0) == loop(1).
using LoopGenerator = std::function<Ray(double)>;

/// Raw overlap product ⟨v_0|v_n⟩ Π_i ⟨v_i|v_{i-1}⟩ on explicit vectors.
Complex overlap_product(std::span<const StateVector> vectors);

/// Overlap product of the path's rays; see file comment.
PhaseResult pancharatnam_product(const DiscretePath& path);

/// Same value as pancharatnam_product, but throws UndefinedError when the
/// endpoints are orthogonal (the open-path phase is then undefined).
PhaseResult geometric_phase_open(const DiscretePath& path);

/// Discrete line integral of the connection A = i⟨ψ|dψ⟩ along a lift,
/// Σ_i Re(i⟨ψ_{i-1}|ψ_i − ψ_{i-1}⟩). Gauge dependent.
double connection_integral(const DiscretePath& path, std::span<const StateVector> lift);

/// Representatives with ⟨ψ_{i-1}|ψ_i⟩ real and positive, starting from the
/// first sample's representative. Throws UndefinedError on orthogonal
/// consecutive rays.
std::vector<StateVector> horizontal_lift(const DiscretePath& path);

/// Holonomy of a closed path. Throws UndefinedError ("not a loop") unless the
/// first and last rays are equal.
PhaseResult loop_holonomy(const DiscretePath& path);

/// Inserts factor−1 geodesic points into every segment, with linearly
/// interpolated times. Original samples are kept.
DiscretePath refine_path(const DiscretePath& path, int factor);

/// Samples the loop on n+1 uniform parameter points s_k = k/n (k = 0..n).
DiscretePath sample_loop(const LoopGenerator& loop, int n);

/// Holonomy angle of `loop` sampled at each n in `n_values`, with the error
/// measured against the finest n. `n_values` must increase, each ≥ 4.
std::vector<ConvergenceRow> convergence_study(const LoopGenerator& loop,
                                              std::span<const int> n_values);

/// Errors below this are treated as exact in convergence_order.
inline constexpr double kConvergenceFloor = 1e-13;

/// Least-squares slope of −log(error) against log(n) over rows whose error
/// exceeds kConvergenceFloor. Returns +∞ when no row is above the floor
/// (the discretization is exact at every n) and NaN when exactly one is.
double convergence_order(std::span<const ConvergenceRow> rows);

/// Spin-1/2 state at Bloch colatitude θ and azimuth φ:
/// (cos θ/2, e^{iφ} sin θ/2).
StateVector bloch_state(double theta, double phi);

/// Latitude circle at colatitude θ, traversed with increasing azimuth.
LoopGenerator bloch_circle(double theta);

}  // namespace histphase
