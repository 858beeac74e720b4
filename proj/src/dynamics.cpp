// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <histphase/dynamics.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

namespace histphase {

TimeDependentHamiltonian::TimeDependentHamiltonian(Sampler sampler, Eigen::Index dim)
    : sampler_(std::move(sampler)), dim_(dim) {
  if (!sampler_) throw InvariantError("Hamiltonian sampler is empty");
  if (dim_ < 1) throw DimensionError("Hamiltonian dimension must be positive");
}

TimeDependentHamiltonian TimeDependentHamiltonian::constant(CMatrix h) {
  const Eigen::Index d = h.rows();
  return TimeDependentHamiltonian([h = std::move(h)](double) { return h; }, d);
}

TimeDependentHamiltonian TimeDependentHamiltonian::zero(Eigen::Index dim) {
  return constant(CMatrix::Zero(dim, dim));
}

CMatrix TimeDependentHamiltonian::operator()(double t) const {
  CMatrix h = sampler_(t);
  if (h.rows() != dim_ || h.cols() != dim_) {
    throw DimensionError("Hamiltonian sample has the wrong shape");
  }
  const double defect = max_abs(h - h.adjoint());
  if (defect > tol::kHermitian) {
    std::ostringstream os;
    os << "Hamiltonian not Hermitian at t = " << t << " (defect " << defect << ")";
    throw InvariantError(os.str());
  }
  return h;
}

TimeDependentHamiltonian TimeDependentHamiltonian::scaled(double c) const {
  return TimeDependentHamiltonian([s = sampler_, c](double t) -> CMatrix { return c * s(t); },
                                  dim_);
}

CMatrix exp_minus_i(const CMatrix& h, double dt) {
  // The eigensolver reads only the lower triangle; the input is Hermitian.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const CMatrix& v = es.eigenvectors();
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) phases[k] = std::polar(1.0, -es.eigenvalues()[k] * dt);
  return v * phases.asDiagonal() * v.adjoint();
}

// ---------------------------------------------------------------------------

PropagatorTable::PropagatorTable(std::vector<double> times, std::vector<UnitaryMatrix> unitaries)
    : times_(std::move(times)), unitaries_(std::move(unitaries)) {
  if (times_.empty()) throw DimensionError("propagator table needs at least one time");
  if (times_.size() != unitaries_.size()) {
    throw DimensionError("propagator table: times/unitaries length mismatch");
  }
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (!(times_[k] > times_[k - 1])) throw InvariantError("propagator grid must strictly increase");
    if (unitaries_[k].dim() != unitaries_[0].dim()) throw DimensionError("propagator: mixed dims");
  }
}

PropagatorTable PropagatorTable::identity(std::vector<double> times, Eigen::Index dim) {
  std::vector<UnitaryMatrix> u(times.size(), UnitaryMatrix::identity(dim));
  return PropagatorTable(std::move(times), std::move(u));
}

std::size_t PropagatorTable::index_of(double t) const {
  auto it = std::lower_bound(times_.begin(), times_.end(), t);
  const double slack = tol::kTimeMatch * std::max(1.0, std::abs(t));
  if (it != times_.end() && std::abs(*it - t) <= slack) return it - times_.begin();
  if (it != times_.begin() && std::abs(*(it - 1) - t) <= slack) return it - times_.begin() - 1;
  std::ostringstream os;
  os << "time " << t << " is not on the propagator grid";
  throw InvariantError(os.str());
}

CMatrix PropagatorTable::between(double t_a, double t_b) const {
  return at(t_b).matrix() * at(t_a).matrix().adjoint();
}

DiscretePath Trajectory::path() const {
  std::vector<Ray> rays;
  rays.reserve(states.size());
  for (const auto& s : states) rays.emplace_back(s);
  return DiscretePath(times, std::move(rays));
}

// ---------------------------------------------------------------------------

std::vector<double> uniform_grid(double t0, double t1, int n) {
  if (n < 1 || !(t1 > t0)) throw InvariantError("uniform grid needs n >= 1 and t1 > t0");
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) g[k] = t0 + (t1 - t0) * static_cast<double>(k) / n;
  g.back() = t1;
  return g;
}

PropagatorTable propagate(const TimeDependentHamiltonian& h, const std::vector<double>& grid) {
  if (grid.size() < 2) throw InvariantError("propagation grid needs at least two times");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw InvariantError("propagation grid must strictly increase");
  }
  std::vector<UnitaryMatrix> u;
  u.reserve(grid.size());
  u.push_back(UnitaryMatrix::identity(h.dim()));
  CMatrix acc = CMatrix::Identity(h.dim(), h.dim());
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double dt = grid[k] - grid[k - 1];
    const CMatrix step = exp_minus_i(h(0.5 * (grid[k] + grid[k - 1])), dt);
    acc = step * acc;
    u.emplace_back(acc);
  }
  return PropagatorTable(grid, std::move(u));
}

Trajectory evolve_state(const PropagatorTable& table, const StateVector& psi0) {
  if (psi0.dim() != table.dim()) throw DimensionError("initial state does not match propagator");
  Trajectory out;
  out.times = table.times();
  out.states.reserve(table.size());
  for (const auto& u : table.unitaries()) {
    out.states.push_back(normalize(u.matrix() * psi0.amplitudes()));
  }
  return out;
}

Projector heisenberg_projector(const Projector& p, const UnitaryMatrix& u) {
  if (p.dim() != u.dim()) throw DimensionError("projector and unitary dimensions differ");
  CMatrix m = u.matrix().adjoint() * p.matrix() * u.matrix();
  m = 0.5 * (m + m.adjoint()).eval();
  return Projector(std::move(m));
}

namespace {

void check_lift(const Trajectory& lift, Eigen::Index dim) {
  if (lift.states.size() < 2) throw DimensionError("lift needs at least two samples");
  if (lift.times.size() != lift.states.size()) {
    throw DimensionError("lift: time stamps and states differ in length");
  }
  for (const auto& s : lift.states) {
    if (s.dim() != dim) throw DimensionError("lift dimension does not match Hamiltonian");
  }
}

double expectation(const StateVector& psi, const CMatrix& h) {
  return psi.amplitudes().dot(h * psi.amplitudes()).real();
}

/// ∫⟨ψ|H|ψ⟩dt by the trapezoid rule on the lift's time stamps.
double energy_integral(const Trajectory& lift, const TimeDependentHamiltonian& h) {
  double total = 0.0;
  double prev = expectation(lift.states[0], h(lift.times[0]));
  for (std::size_t k = 1; k < lift.size(); ++k) {
    const double cur = expectation(lift.states[k], h(lift.times[k]));
    total += 0.5 * (prev + cur) * (lift.times[k] - lift.times[k - 1]);
    prev = cur;
  }
  return total;
}

}  // namespace

Complex action_functional(const Trajectory& lift, const TimeDependentHamiltonian& h) {
  check_lift(lift, h.dim());
  Complex kinetic = 0.0;
  for (std::size_t k = 1; k < lift.size(); ++k) {
    const CVector& a = lift.states[k - 1].amplitudes();
    kinetic += kI * a.dot(lift.states[k].amplitudes() - a);
  }
  return kinetic - energy_integral(lift, h);
}

PhaseSplit phase_split(const Trajectory& lift, const TimeDependentHamiltonian& h) {
  check_lift(lift, h.dim());
  const PhaseResult geo = geometric_phase_open(lift.path());
  if (!geo.valid()) throw UndefinedError("geometric phase undefined: vanishing overlap on the path");
  PhaseSplit out;
  out.total_angle =
      std::arg(inner_product(lift.states.front(), lift.states.back()));
  out.total_angle = wrap_angle(out.total_angle);
  out.geometric_angle = *geo.angle;
  out.dynamical_phase = -energy_integral(lift, h);
  out.dynamical_angle = wrap_angle(out.dynamical_phase);
  return out;
}

// ---------------------------------------------------------------------------

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

TimeDependentHamiltonian cone_field(double theta, double omega, double ramp_time) {
  if (!(ramp_time > 0.0)) throw InvariantError("ramp time must be positive");
  const CMatrix sx = pauli_x(), sy = pauli_y(), sz = pauli_z();
  return TimeDependentHamiltonian(
      [=](double t) -> CMatrix {
        const double s = t / ramp_time;
        const double phi = 2.0 * std::numbers::pi * s - std::sin(2.0 * std::numbers::pi * s);
        return 0.5 * omega *
               (std::sin(theta) * std::cos(phi) * sx + std::sin(theta) * std::sin(phi) * sy +
                std::cos(theta) * sz);
      },
      2);
}

}  // namespace histphase
