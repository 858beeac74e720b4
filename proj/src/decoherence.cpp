// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <histphase/decoherence.hpp>

#include <cmath>
#include <sstream>

namespace histphase {

namespace {

Complex sandwich(const StateVector& a, const CMatrix& m, const StateVector& b) {
  return a.amplitudes().dot(m * b.amplitudes());
}

void require_same_grid(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DimensionError("fine-grained paths have different grids");
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > tol::kTimeMatch * std::max(1.0, std::abs(a[k]))) {
      throw DimensionError("fine-grained paths have different grids");
    }
  }
}

/// Π_k ⟨ψ_k|U(t_k)U†(t_{k-1})|ψ_{k-1}⟩ in the Schrödinger picture.
Complex discrete_amplitude(const std::vector<double>& times, const std::vector<StateVector>& s,
                           const PropagatorTable& table) {
  Complex acc = 1.0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    acc *= sandwich(s[k], table.between(times[k - 1], times[k]), s[k - 1]);
  }
  return acc;
}

/// Endpoint data and chain amplitude of one fine-grained tuple.
struct FineChain {
  StateVector first;
  StateVector last;
  Complex amplitude;
};

}  // namespace

Complex decoherence_functional(const History& a, const History& b, const DensityMatrix& rho0,
                               const PropagatorTable& table) {
  if (a.dim() != b.dim() || a.dim() != rho0.dim()) {
    throw DimensionError("decoherence functional: dimension mismatch");
  }
  require_same_grid(a.times(), b.times());
  const CMatrix ca = class_operator(a, table);
  const CMatrix cb = class_operator(b, table);
  return (ca * rho0.matrix() * cb.adjoint()).trace();
}

FineGrainedValue df_kinematic_finegrained(const DiscretePath& psi, const DiscretePath& phi,
                                          const DensityMatrix& rho0) {
  require_same_grid(psi.times(), phi.times());
  if (psi.dim() != rho0.dim() || phi.dim() != rho0.dim()) {
    throw DimensionError("kinematic decoherence functional: dimension mismatch");
  }
  const auto& pr = psi.rays();
  const auto& fr = phi.rays();
  const std::size_t n = pr.size() - 1;
  FineGrainedValue out;
  Complex acc = sandwich(pr[0].representative(), rho0.matrix(), fr[0].representative()) *
                inner_product(fr[n].representative(), pr[n].representative());
  for (std::size_t k = 1; k <= n; ++k) {
    const Complex a = inner_product(pr[k].representative(), pr[k - 1].representative());
    const Complex b = inner_product(fr[k - 1].representative(), fr[k].representative());
    if (std::abs(a) <= tol::kOrthogonal || std::abs(b) <= tol::kOrthogonal) {
      out.vanishing = true;
      return out;
    }
    acc *= a * b;
  }
  out.value = acc;
  return out;
}

Complex df_dynamical_finegrained(const Trajectory& psi, const Trajectory& phi,
                                 const DensityMatrix& rho0, const std::optional<CMatrix>& rho_f,
                                 const TimeDependentHamiltonian& h) {
  require_same_grid(psi.times, phi.times);
  const CMatrix rf = rho_f.value_or(CMatrix::Identity(rho0.dim(), rho0.dim()));
  const Complex s_psi = action_functional(psi, h);
  const Complex s_phi = action_functional(phi, h);
  const Complex pre = sandwich(psi.states.front(), rho0.matrix(), phi.states.front()) *
                      sandwich(phi.states.back(), rf, psi.states.back());
  return pre * std::exp(kI * s_psi - kI * std::conj(s_phi));
}

Complex df_dynamical_finegrained(const Trajectory& psi, const Trajectory& phi,
                                 const DensityMatrix& rho0, const std::optional<CMatrix>& rho_f,
                                 const PropagatorTable& table) {
  require_same_grid(psi.times, phi.times);
  if (psi.states.empty()) throw DimensionError("empty trajectory");
  const CMatrix rf = rho_f.value_or(CMatrix::Identity(rho0.dim(), rho0.dim()));
  const CMatrix& u1 = table.at(psi.times.front()).matrix();
  const CMatrix rho_first = u1 * rho0.matrix() * u1.adjoint();
  const Complex pre = sandwich(psi.states.front(), rho_first, phi.states.front()) *
                      sandwich(phi.states.back(), rf, psi.states.back());
  return pre * discrete_amplitude(psi.times, psi.states, table) *
         std::conj(discrete_amplitude(phi.times, phi.states, table));
}

DecoherenceMatrix build_decoherence_matrix(const HistorySet& set, const DensityMatrix& rho0,
                                           const PropagatorTable& table) {
  const std::size_t n = set.size();
  std::vector<CMatrix> c;
  c.reserve(n);
  for (const auto& h : set.histories) c.push_back(class_operator(h, table));
  DecoherenceMatrix m{set, rho0, table, CMatrix(n, n)};
  for (std::size_t a = 0; a < n; ++a) {
    const CMatrix left = c[a] * rho0.matrix();
    for (std::size_t b = 0; b < n; ++b) m.values(a, b) = (left * c[b].adjoint()).trace();
  }
  m.hermiticity_defect = max_abs(m.values - m.values.adjoint());
  m.min_diagonal = m.values.diagonal().real().minCoeff();
  m.max_diagonal_imag = m.values.diagonal().imag().cwiseAbs().maxCoeff();
  m.grand_sum = m.values.sum();

  std::ostringstream err;
  if (m.hermiticity_defect > 1e-12) err << "not Hermitian (" << m.hermiticity_defect << "); ";
  if (m.max_diagonal_imag > 1e-12) err << "complex diagonal (" << m.max_diagonal_imag << "); ";
  if (m.min_diagonal < -1e-12) err << "negative diagonal (" << m.min_diagonal << "); ";
  if (std::abs(m.grand_sum - Complex(1.0)) > 1e-9) err << "grand sum " << m.grand_sum << " != 1; ";
  if (!err.str().empty()) throw InvariantError("decoherence matrix: " + err.str());
  return m;
}

double probability(const DecoherenceMatrix& m, std::size_t alpha) {
  if (alpha >= m.size()) throw DimensionError("history index out of range");
  return m.values(alpha, alpha).real();
}

History join_histories(const HistorySet& set, std::size_t alpha, std::size_t beta) {
  if (alpha >= set.size() || beta >= set.size()) throw DimensionError("history index out of range");
  if (alpha == beta) throw InvariantError("cannot join a history with itself");
  const auto& ca = set.choices[alpha];
  const auto& cb = set.choices[beta];
  std::size_t slot = ca.size();
  for (std::size_t k = 0; k < ca.size(); ++k) {
    if (ca[k] == cb[k]) continue;
    if (slot != ca.size()) throw InvariantError("histories differ in more than one time slot");
    slot = k;
  }
  std::vector<Event> ev = set.histories[alpha].events();
  ev[slot].projector = Projector(set.alternatives[slot][ca[slot]].matrix() +
                                 set.alternatives[slot][cb[slot]].matrix());
  return History(std::move(ev));
}

double interference(const DecoherenceMatrix& m, std::size_t alpha, std::size_t beta) {
  const History joined = join_histories(m.set, alpha, beta);
  const CMatrix c = class_operator(joined, m.table);
  const double p_join = (c * m.rho0.matrix() * c.adjoint()).trace().real();
  return p_join - probability(m, alpha) - probability(m, beta);
}

ConsistencyReport consistency_check(const DecoherenceMatrix& m, double epsilon) {
  if (!(epsilon > 0.0)) throw InvariantError("consistency tolerance must be positive");
  ConsistencyReport r;
  r.epsilon = epsilon;
  for (Eigen::Index a = 0; a < m.values.rows(); ++a) {
    for (Eigen::Index b = 0; b < m.values.cols(); ++b) {
      if (a != b) r.max_offdiag_modulus = std::max(r.max_offdiag_modulus, std::abs(m.values(a, b)));
    }
  }
  r.is_consistent = r.max_offdiag_modulus <= epsilon;
  if (r.is_consistent) {
    for (std::size_t a = 0; a < m.size(); ++a) r.probabilities.push_back(probability(m, a));
  }
  return r;
}

Complex df_coarse_sum(const History& a, const History& b, const DensityMatrix& rho0,
                      const std::optional<CMatrix>& rho_f, const PropagatorTable& table) {
  if (a.dim() != b.dim() || a.dim() != rho0.dim()) throw DimensionError("dimension mismatch");
  const std::vector<double> times = a.times();
  require_same_grid(times, b.times());
  tuple_count(a);
  tuple_count(b);

  auto chains = [&](const History& h) {
    const auto bases = event_bases(h);
    std::vector<std::size_t> extents;
    for (const auto& basis : bases) extents.push_back(basis.size());
    std::vector<FineChain> out;
    for_each_tuple(extents, [&](const std::vector<std::size_t>& idx) {
      std::vector<StateVector> s;
      for (std::size_t k = 0; k < idx.size(); ++k) s.push_back(bases[k][idx[k]]);
      out.push_back({s.front(), s.back(), discrete_amplitude(times, s, table)});
    });
    return out;
  };
  const std::vector<FineChain> ca = chains(a);
  const std::vector<FineChain> cb = chains(b);

  const CMatrix rf = rho_f.value_or(CMatrix::Identity(rho0.dim(), rho0.dim()));
  const CMatrix& u1 = table.at(times.front()).matrix();
  const CMatrix rho_first = u1 * rho0.matrix() * u1.adjoint();
  // Same expression as the table overload of df_dynamical_finegrained, with
  // the per-tuple chain amplitudes hoisted out of the double loop.
  Complex total = 0.0;
  for (const auto& x : ca) {
    for (const auto& y : cb) {
      total += sandwich(x.first, rho_first, y.first) * sandwich(y.last, rf, x.last) *
               x.amplitude * std::conj(y.amplitude);
    }
  }
  return total;
}

}  // namespace histphase
