// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file decoherence.hpp
 * @brief Decoherence functional d(α, β) = Tr(C_α ρ₀ C_β†) in operator form
 *        and in fine-grained (overlap-product / action) form, plus
 *        probabilities, interference and consistency diagnostics.
 *
 * Fine-grained forms for paths ψ, φ sampled on a common grid:
 *
 *   kinematic:  ⟨ψ_0|ρ₀|φ_0⟩ ⟨φ_n|ψ_n⟩ · Π⟨ψ_k|ψ_{k-1}⟩ · Π⟨φ_{k-1}|φ_k⟩
 *   dynamical:  ⟨ψ_0|ρ₀|φ_0⟩ ⟨φ_n|ρ_f|ψ_n⟩ · e^{iS[ψ] − iS*[φ]}
 *
 * Both are gauge invariant and the kinematic one equals the operator form
 * for rank-1 histories under trivial dynamics exactly.
 */

#pragma once

#include <histphase/histories.hpp>

#include <optional>
#include <vector>

namespace histphase {

/// Full pairwise decoherence matrix of a history set, with its structural
/// diagnostics. Construction throws InvariantError if Hermiticity (1e-12),
/// diagonal reality/positivity (1e-12) or the grand sum (1e-9) fail.
struct DecoherenceMatrix {
  HistorySet set;
  DensityMatrix rho0;
  PropagatorTable table;
  CMatrix values;

  double hermiticity_defect = 0.0;  ///< max |d(α,β) − conj d(β,α)|
  double min_diagonal = 0.0;        ///< min Re d(α,α)
  double max_diagonal_imag = 0.0;   ///< max |Im d(α,α)|
  Complex grand_sum{0.0, 0.0};      ///< Σ_{α,β} d(α,β)

  std::size_t size() const { return set.size(); }
};

struct ConsistencyReport {
  double epsilon = 0.0;
  double max_offdiag_modulus = 0.0;
  bool is_consistent = false;
  std::vector<double> probabilities;  ///< empty unless consistent
};

/// Fine-grained value with a flag for vanishing interior overlaps (the value
/// is then exactly 0).
struct FineGrainedValue {
  Complex value{0.0, 0.0};
  bool vanishing = false;
};

/// Tr(C_a ρ₀ C_b†).
Complex decoherence_functional(const History& a, const History& b, const DensityMatrix& rho0,
                               const PropagatorTable& table);

/// Kinematic fine-grained form on two paths sharing a time grid, computed
/// from overlaps only.
FineGrainedValue df_kinematic_finegrained(const DiscretePath& psi, const DiscretePath& phi,
                                          const DensityMatrix& rho0);

/// Dynamical fine-grained form with the continuum action discretized by
/// action_functional. ρ_f defaults to the identity. Agrees with the
/// operator form up to O(Δt).
Complex df_dynamical_finegrained(const Trajectory& psi, const Trajectory& phi,
                                 const DensityMatrix& rho0, const std::optional<CMatrix>& rho_f,
                                 const TimeDependentHamiltonian& h);

/// Dynamical fine-grained form with exact discrete dynamics: e^{iS[ψ]} is
/// replaced by Π⟨ψ_k|U(t_k)U†(t_{k-1})|ψ_{k-1}⟩ and ρ₀ is evolved from the
/// table's first time to the first sample. Trajectory times must lie on
/// the table grid. Equals Tr(U_n†ρ_f U_n C_ψ ρ₀ C_φ†) exactly.
Complex df_dynamical_finegrained(const Trajectory& psi, const Trajectory& phi,
                                 const DensityMatrix& rho0, const std::optional<CMatrix>& rho_f,
                                 const PropagatorTable& table);

/// Pairwise matrix over a history set; every entry evaluated independently.
DecoherenceMatrix build_decoherence_matrix(const HistorySet& set, const DensityMatrix& rho0,
                                           const PropagatorTable& table);

/// Re d(α, α). Throws DimensionError on a bad index.
double probability(const DecoherenceMatrix& m, std::size_t alpha);

/// Histories of the set that differ in exactly one time slot, joined there
/// by summing their (orthogonal) alternatives. Throws InvariantError when
/// the pair is not disjoint in that sense.
History join_histories(const HistorySet& set, std::size_t alpha, std::size_t beta);

/// p(α∨β) − p(α) − p(β), with p(α∨β) from the joined history's class
/// operator.
double interference(const DecoherenceMatrix& m, std::size_t alpha, std::size_t beta);

/// Strong consistency: max_{α≠β} |d(α,β)| ≤ ε.
ConsistencyReport consistency_check(const DecoherenceMatrix& m, double epsilon);

/// Σ over fine-grained tuples of both histories (orthonormal bases of every
/// event projector) of the exact-dynamics fine-grained value. Equals
/// decoherence_functional for ρ_f = 1. Throws InvariantError beyond
/// kMaxTuples tuples per side.
Complex df_coarse_sum(const History& a, const History& b, const DensityMatrix& rho0,
                      const std::optional<CMatrix>& rho_f, const PropagatorTable& table);

}  // namespace histphase
