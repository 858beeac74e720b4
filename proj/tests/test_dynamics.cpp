// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "test_support.hpp"

#include <histphase/dynamics.hpp>

using namespace histphase;
using namespace histphase::testing;

namespace {

// H(t) = (w0/2) σz + (g/2)(cos(wt) σx + sin(wt) σy). In the frame rotating
// with exp(-i w t σz / 2) the Hamiltonian is constant, which gives U(t) in
// closed form.
struct RotatingField {
  double w0 = 1.3, g = 0.9, w = 2.1;

  TimeDependentHamiltonian hamiltonian() const {
    return TimeDependentHamiltonian(
        [*this](double t) -> CMatrix {
          return 0.5 * w0 * pauli_z() + 0.5 * g * (std::cos(w * t) * pauli_x() + std::sin(w * t) * pauli_y());
        },
        2);
  }

  CMatrix exact(double t) const {
    const CMatrix frame = exp_minus_i(0.5 * w * pauli_z(), t);
    const CMatrix inner = exp_minus_i(0.5 * (w0 - w) * pauli_z() + 0.5 * g * pauli_x(), t);
    return frame * inner;
  }
};

double deviation(const PropagatorTable& table, const std::function<CMatrix(double)>& exact) {
  double worst = 0.0;
  for (std::size_t k = 0; k < table.size(); ++k) {
    worst = std::max(worst, max_abs(table.unitaries()[k].matrix() - exact(table.times()[k])));
  }
  return worst;
}

}  // namespace

TEST_CASE("TimeDependentHamiltonian validation") {
  CMatrix bad = pauli_x();
  bad(0, 1) = 2.0;
  const TimeDependentHamiltonian h([bad](double) { return bad; }, 2);
  CHECK_THROWS_AS(h(0.0), InvariantError);
  CHECK_THROWS_AS(propagate(h, uniform_grid(0.0, 1.0, 4)), InvariantError);
  CHECK_THROWS_AS(propagate(TimeDependentHamiltonian::zero(2), {0.0, 1.0, 1.0}), InvariantError);
  CHECK_THROWS_AS(propagate(TimeDependentHamiltonian::zero(2), {0.0}), InvariantError);
}

TEST_CASE("propagate") {
  const auto zero = propagate(TimeDependentHamiltonian::zero(3), uniform_grid(0.0, 2.0, 8));
  for (const auto& u : zero.unitaries()) CHECK(max_abs(u.matrix() - CMatrix::Identity(3, 3)) < 1e-15);

  const auto half_z = propagate(TimeDependentHamiltonian::constant(0.5 * pauli_z()), uniform_grid(0.0, kPi, 16));
  CMatrix expected = CMatrix::Zero(2, 2);
  expected(0, 0) = std::exp(-kI * kPi / 2.0);
  expected(1, 1) = std::exp(kI * kPi / 2.0);
  CHECK(max_abs(half_z.at(kPi).matrix() - expected) < 1e-12);

  Rng rng(20);
  const auto h = random_smooth_hamiltonian(rng, 3, 1.0);
  const auto grid = uniform_grid(0.0, 1.0, 50);
  const auto table = propagate(h, grid);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const CMatrix step = exp_minus_i(h(0.5 * (grid[k] + grid[k - 1])), grid[k] - grid[k - 1]);
    CHECK(max_abs(table.unitaries()[k].matrix() - step * table.unitaries()[k - 1].matrix()) < 1e-14);
    const CMatrix& u = table.unitaries()[k].matrix();
    CHECK(max_abs(u.adjoint() * u - CMatrix::Identity(3, 3)) < 1e-9);
  }

  // Constant H: stepping is exact.
  const CMatrix a = random_hermitian(rng, 3, 2.0);
  const auto constant = propagate(TimeDependentHamiltonian::constant(a), uniform_grid(0.0, 3.0, 40));
  CHECK(deviation(constant, [&](double t) { return exp_minus_i(a, t); }) < 1e-9);

  CHECK(max_abs(table.between(grid[10], grid[30]) -
                table.unitaries()[30].matrix() * table.unitaries()[10].matrix().adjoint()) < 1e-15);
  CHECK_THROWS_AS(table.at(0.123456), InvariantError);
}

TEST_CASE("propagate is second order") {
  const RotatingField field;
  const auto h = field.hamiltonian();
  const auto exact = [&](double t) { return field.exact(t); };
  double previous = deviation(propagate(h, uniform_grid(0.0, 4.0, 32)), exact);
  for (int n = 64; n <= 512; n *= 2) {
    const double current = deviation(propagate(h, uniform_grid(0.0, 4.0, n)), exact);
    CHECK(previous / current >= 3.5);
    previous = current;
  }

  // Scalar modulation f(t) A: U(t) = exp(-i A ∫f).
  Rng rng(21);
  const CMatrix a = random_hermitian(rng, 3, 1.0);
  const TimeDependentHamiltonian modulated([a](double t) -> CMatrix { return (1.0 + std::sin(3.0 * t)) * a; }, 3);
  const auto closed = [&](double t) { return exp_minus_i(a, t + (1.0 - std::cos(3.0 * t)) / 3.0); };
  previous = deviation(propagate(modulated, uniform_grid(0.0, 2.0, 32)), closed);
  for (int n = 64; n <= 512; n *= 2) {
    const double current = deviation(propagate(modulated, uniform_grid(0.0, 2.0, n)), closed);
    CHECK(previous / current >= 3.5);
    previous = current;
  }
}

TEST_CASE("evolve_state") {
  const auto grid = uniform_grid(0.0, 2.0 * kPi, 64);
  const auto free = evolve_state(propagate(TimeDependentHamiltonian::zero(2), grid), x_plus());
  for (const auto& s : free.states) CHECK(Ray(s) == Ray(x_plus()));

  const auto sz = propagate(TimeDependentHamiltonian::constant(pauli_z()), grid);
  const auto eigen = evolve_state(sz, z_plus());
  for (const auto& s : eigen.states) CHECK(Ray(s) == Ray(z_plus()));

  // Relative phase between e0 and e1 advances by 2t; the ray returns at t = π.
  const auto grid_pi = uniform_grid(0.0, kPi, 64);
  const auto loop = evolve_state(propagate(TimeDependentHamiltonian::constant(pauli_z()), grid_pi), x_plus());
  CHECK(Ray(loop.states.back()) == Ray(x_plus()));
  CHECK_FALSE(Ray(loop.states[32]) == Ray(x_plus()));

  Rng rng(22);
  const auto table = propagate(random_smooth_hamiltonian(rng, 4, 1.0), uniform_grid(0.0, 2.0, 100));
  const auto traj = evolve_state(table, random_state(rng, 4));
  CHECK(traj.path().size() == 101);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    CHECK(std::abs((table.unitaries()[k].matrix() * traj.states[0].amplitudes()).norm() - 1.0) < 1e-9);
  }
  CHECK_THROWS_AS(evolve_state(table, random_state(rng, 3)), DimensionError);
}

TEST_CASE("heisenberg_projector") {
  Rng rng(23);
  const Projector p = random_projector(rng, 3, 2);
  CHECK(max_abs(heisenberg_projector(p, UnitaryMatrix::identity(3)).matrix() - p.matrix()) < 1e-15);

  const Projector e0 = projector_from_ray(Ray(StateVector::basis(2, 0)));
  const Projector e1 = projector_from_ray(Ray(StateVector::basis(2, 1)));
  CHECK(max_abs(heisenberg_projector(e0, UnitaryMatrix(pauli_x())).matrix() - e1.matrix()) < 1e-15);

  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index dim = 2 + trial % 4;
    const int rank = rng.integer(1, static_cast<int>(dim));
    const Projector q = random_projector(rng, dim, rank);
    const Projector h = heisenberg_projector(q, random_unitary(rng, dim));
    const CMatrix& m = h.matrix();
    CHECK(max_abs(m - m.adjoint()) < 1e-12);
    CHECK(max_abs(m * m - m) < 1e-10);
    CHECK(std::abs(m.trace() - q.matrix().trace()) < 1e-12);
    CHECK(h.rank() == rank);
  }
  CHECK_THROWS_AS(heisenberg_projector(p, UnitaryMatrix::identity(2)), DimensionError);
}

TEST_CASE("action_functional") {
  const int n = 2000;
  const double energy = 0.8;
  const double duration = 1.5;
  const auto grid = uniform_grid(0.0, duration, n);
  CMatrix h = CMatrix::Zero(2, 2);
  h(0, 0) = energy;
  h(1, 1) = -energy;

  Trajectory constant{grid, std::vector<StateVector>(grid.size(), StateVector::basis(2, 0))};
  CHECK(std::abs(action_functional(constant, TimeDependentHamiltonian::zero(2))) < 1e-15);
  CHECK(std::abs(action_functional(constant, TimeDependentHamiltonian::constant(h)) - Complex(-energy * duration)) <
        1e-12);

  Trajectory eigen{grid, {}};
  for (double t : grid) eigen.states.push_back(StateVector::basis(2, 0).with_phase(-energy * t));
  CHECK(std::abs(action_functional(eigen, TimeDependentHamiltonian::constant(h))) < 1.0 / n);

  // The imaginary part of a unitary lift is first order in the step.
  Rng rng(24);
  for (int trial = 0; trial < 5; ++trial) {
    const auto field = random_smooth_hamiltonian(rng, 3, 1.0);
    const auto psi0 = random_state(rng, 3);
    double previous = 0.0;
    for (int steps = 100; steps <= 800; steps *= 2) {
      const auto traj = evolve_state(propagate(field, uniform_grid(0.0, 1.0, steps)), psi0);
      const double im = std::abs(action_functional(traj, field).imag());
      if (previous > 0.0) CHECK(previous / im >= 1.95);
      previous = im;
    }
  }

  Trajectory ragged{grid, std::vector<StateVector>(3, StateVector::basis(2, 0))};
  CHECK_THROWS_AS(action_functional(ragged, TimeDependentHamiltonian::zero(2)), DimensionError);
}

TEST_CASE("phase_split") {
  // Horizontal lift of a loop with H = 0: everything is geometric.
  const DiscretePath loop = sample_loop(bloch_circle(kPi / 3), 1000);
  const Trajectory lift{loop.times(), horizontal_lift(loop)};
  const PhaseSplit free = phase_split(lift, TimeDependentHamiltonian::zero(2));
  CHECK(free.dynamical_angle == 0.0);
  CHECK(angle_distance(free.total_angle, free.geometric_angle) < 1e-12);

  const double duration = 7.0;
  const auto grid = uniform_grid(0.0, duration, 1000);
  const auto eigen = evolve_state(propagate(TimeDependentHamiltonian::constant(pauli_z()), grid), z_plus());
  const PhaseSplit stationary = phase_split(eigen, TimeDependentHamiltonian::constant(pauli_z()));
  CHECK(std::abs(stationary.geometric_angle) < 1e-12);
  CHECK(angle_distance(stationary.dynamical_angle, -duration) < 1e-12);
  CHECK(std::abs(stationary.dynamical_phase + duration) < 1e-12);
  CHECK(angle_distance(stationary.total_angle, -duration) < 1e-12);

  Rng rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index dim = 2 + trial % 2;
    const auto field = random_smooth_hamiltonian(rng, dim, 1.0);
    const auto traj = evolve_state(propagate(field, uniform_grid(0.0, 2.0, 1000)), random_state(rng, dim));
    const PhaseSplit s = phase_split(traj, field);
    CHECK(angle_distance(s.total_angle, s.geometric_angle + s.dynamical_angle) < 1e-3);
    for (double angle : {s.total_angle, s.geometric_angle, s.dynamical_angle}) {
      CHECK(angle > -kPi);
      CHECK(angle <= kPi);
    }
  }
}

TEST_CASE("adiabatic cone field") {
  const double theta = kPi / 3;
  const double target = -kPi * (1.0 - std::cos(theta));
  double previous = 10.0;
  for (double ramp : {100.0, 200.0, 400.0, 800.0}) {
    const auto field = cone_field(theta, 1.0, ramp);
    const auto traj = evolve_state(propagate(field, uniform_grid(0.0, ramp, 4096)), bloch_state(theta, 0.0));
    const PhaseSplit s = phase_split(traj, field);
    const double error = angle_distance(s.geometric_angle, target);
    CHECK(error <= 1.1 * previous);
    previous = error;

    // The geometric angle does not depend on the energy scale.
    const auto scaled = field.scaled(2.0);
    const auto fast = evolve_state(propagate(scaled, uniform_grid(0.0, ramp, 4096)), bloch_state(theta, 0.0));
    const PhaseSplit s2 = phase_split(fast, scaled);
    CHECK(angle_distance(s2.geometric_angle, s.geometric_angle) < error + 1e-3);
    CHECK(std::abs(s2.dynamical_phase - 2.0 * s.dynamical_phase) < 1e-2 * std::abs(s.dynamical_phase));
  }
  CHECK(previous < 0.05);
  CHECK_THROWS_AS(cone_field(theta, 1.0, 0.0), InvariantError);
}
