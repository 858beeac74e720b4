// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file dynamics.hpp
 * @brief Time-dependent Hamiltonian evolution and the geometric/dynamical
 *        phase split. Units: ħ = 1, Hamiltonians in angular frequency.
 */

#pragma once

#include <histphase/geometry.hpp>

#include <functional>
#include <vector>

namespace histphase {

/// Hermitian-matrix-valued function of time. Each query is validated.
class TimeDependentHamiltonian {
 public:
  using Sampler = std::function<CMatrix(double)>;

  TimeDependentHamiltonian(Sampler sampler, Eigen::Index dim);

  static TimeDependentHamiltonian constant(CMatrix h);
  static TimeDependentHamiltonian zero(Eigen::Index dim);

  /// H(t); throws InvariantError if the sample is not Hermitian.
  CMatrix operator()(double t) const;

  Eigen::Index dim() const { return dim_; }

  /// c·H(t).
  TimeDependentHamiltonian scaled(double c) const;

 private:
  Sampler sampler_;
  Eigen::Index dim_;
};

/// exp(−i H dt) for Hermitian H, by unitary diagonalization.
CMatrix exp_minus_i(const CMatrix& h, double dt);

/// U(t_k) on an increasing grid, U(t_0) = 1.
class PropagatorTable {
 public:
  PropagatorTable(std::vector<double> times, std::vector<UnitaryMatrix> unitaries);

  /// Trivial dynamics on the given grid.
  static PropagatorTable identity(std::vector<double> times, Eigen::Index dim);

  const std::vector<double>& times() const { return times_; }
  const std::vector<UnitaryMatrix>& unitaries() const { return unitaries_; }
  Eigen::Index dim() const { return unitaries_.front().dim(); }
  std::size_t size() const { return times_.size(); }

  /// Grid index of `t`; throws InvariantError when t is not a grid time
  /// (no interpolation).
  std::size_t index_of(double t) const;
  const UnitaryMatrix& at(double t) const { return unitaries_[index_of(t)]; }

  /// U(t_b) U(t_a)†, the evolution from grid time t_a to t_b.
  CMatrix between(double t_a, double t_b) const;

 private:
  std::vector<double> times_;
  std::vector<UnitaryMatrix> unitaries_;
};

/// Time-stamped lift of a path: explicit representatives, not just rays.
struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;

  DiscretePath path() const;
  std::size_t size() const { return states.size(); }
};

/// Geometric/dynamical decomposition of the total phase of an evolution.
struct PhaseSplit {
  double total_angle = 0.0;
  double geometric_angle = 0.0;
  double dynamical_angle = 0.0;   ///< wrapped into (−π, π]
  double dynamical_phase = 0.0;   ///< unwrapped −∫⟨ψ|H|ψ⟩dt
};

/// Uniform grid of n+1 points on [t0, t1].
std::vector<double> uniform_grid(double t0, double t1, int n);

/// Time-ordered product of per-step exponentials, each of H at the step
/// midpoint (second order).
PropagatorTable propagate(const TimeDependentHamiltonian& h, const std::vector<double>& grid);

/// U(t_k)|ψ_0⟩ at every grid time.
Trajectory evolve_state(const PropagatorTable& table, const StateVector& psi0);

/// U† P U.
Projector heisenberg_projector(const Projector& p, const UnitaryMatrix& u);

/// Discrete ∫dt ⟨φ|i d/dt − H|φ⟩: kinematic part Σ i⟨φ_{k-1}|φ_k − φ_{k-1}⟩,
/// Hamiltonian part by the trapezoid rule. Real up to O(Δt) for a unit lift.
Complex action_functional(const Trajectory& lift, const TimeDependentHamiltonian& h);

/// Splits the phase of ⟨ψ(t_0)|ψ(t_f)⟩ into the overlap-product geometric
/// angle of the ray path and −∫⟨H⟩dt. Throws UndefinedError when the
/// endpoints are orthogonal.
PhaseSplit phase_split(const Trajectory& lift, const TimeDependentHamiltonian& h);

/// Pauli matrices σ_x, σ_y, σ_z.
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

/// Spin-1/2 driven around the colatitude-θ cone:
/// H(t) = (ω/2) n(t)·σ with azimuth 2π·(s − sin(2πs)/2π), s = t/T.
/// One full cycle over [0, T]; the azimuthal velocity vanishes at both ends.
TimeDependentHamiltonian cone_field(double theta, double omega, double ramp_time);

}  // namespace histphase
