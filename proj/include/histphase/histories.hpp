// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file histories.hpp
 * @brief Time-ordered histories, class operators and the trace map
 *        α ↦ Tr C_α, including its decomposition into fine-grained phases.
 *
 * A history is a finite list of (time, projector) events. The class operator
 *
 *     C_α = U†(t_n) α_n U(t_n) ⋯ U†(t_1) α_1 U(t_1)
 *
 * puts the latest Heisenberg-picture projector leftmost. For rank-1
 * projectors and trivial dynamics Tr C_α is exactly the overlap product of
 * the corresponding path (pancharatnam_product).
 */

#pragma once

#include <histphase/dynamics.hpp>

#include <string>
#include <vector>

namespace histphase {

struct Event {
  double time;
  Projector projector;
};

/// Events with strictly increasing times and a common dimension.
class History {
 public:
  explicit History(std::vector<Event> events);

  /// Rank-1 history |ψ_k⟩⟨ψ_k| at the path's sample times.
  static History fine_grained(const DiscretePath& path);

  const std::vector<Event>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  Eigen::Index dim() const { return events_.front().projector.dim(); }
  bool fine_grained() const;
  std::vector<double> times() const;

 private:
  std::vector<Event> events_;
};

/// Cap on enumerated histories and on fine-grained tuples per history.
inline constexpr std::size_t kMaxTuples = 4096;

/// Exhaustive, exclusive set of histories: every combination of per-time
/// alternatives. `choices[h][k]` is the alternative used at time k by
/// history h; the first time slot varies fastest.
struct HistorySet {
  std::vector<double> times;
  std::vector<std::vector<Projector>> alternatives;
  std::vector<History> histories;
  std::vector<std::vector<int>> choices;

  std::size_t size() const { return histories.size(); }
  Eigen::Index dim() const { return alternatives.front().front().dim(); }

  /// "a0.b1..." style label of history h: one index per time slot.
  std::string label(std::size_t h) const;
};

/// Heisenberg-picture product with the latest projector leftmost. Every
/// event time must be a grid time of `table`.
CMatrix class_operator(const History& h, const PropagatorTable& table);

/// Tr C_α.
Complex trace_class_operator(const History& h, const PropagatorTable& table);

/// Σ over orthonormal-basis tuples (one basis vector per event) of the
/// fine-grained overlap product of the Heisenberg-picture vectors. Equals
/// trace_class_operator by linearity of the trace; computed along a
/// separate route (vector overlaps, not matrix products).
Complex coarse_phase_sum(const History& h, const PropagatorTable& table);

/// Validates exhaustiveness (Σ alternatives = 1) and exclusiveness
/// (P_a P_b = 0 for a ≠ b) at each time within tol::kHistoryAlgebra and
/// enumerates the Cartesian product. Throws InvariantError naming the time
/// slot and defect norm on violation, and when more than kMaxTuples
/// histories would result.
HistorySet build_history_set(const std::vector<std::vector<Projector>>& per_time_alternatives,
                             const std::vector<double>& times);

/// Product of per-event tuple counts (ranks). Throws InvariantError if it
/// exceeds kMaxTuples.
std::size_t tuple_count(const History& h);

/// Per-event orthonormal bases, used for fine-grained decompositions.
std::vector<std::vector<StateVector>> event_bases(const History& h);

/// Calls `f(indices)` for every index tuple with indices[k] < extents[k],
/// first slot varying fastest.
template <typename F>
void for_each_tuple(const std::vector<std::size_t>& extents, F&& f) {
  std::vector<std::size_t> idx(extents.size(), 0);
  for (std::size_t e : extents) {
    if (e == 0) return;
  }
  while (true) {
    f(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t k = 0;
    while (k < idx.size()) {
      if (++idx[k] < extents[k]) break;
      idx[k] = 0;
      ++k;
    }
    if (k == idx.size()) return;
  }
}

}  // namespace histphase
