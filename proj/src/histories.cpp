// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <histphase/histories.hpp>

#include <sstream>

namespace histphase {

History::History(std::vector<Event> events) : events_(std::move(events)) {
  if (events_.empty()) throw DimensionError("history needs at least one event");
  for (std::size_t k = 1; k < events_.size(); ++k) {
    if (!(events_[k].time > events_[k - 1].time)) {
      throw InvariantError("history: event times must strictly increase");
    }
    if (events_[k].projector.dim() != events_[0].projector.dim()) {
      throw DimensionError("history: projectors of different dimension");
    }
  }
}

History History::fine_grained(const DiscretePath& path) {
  std::vector<Event> ev;
  ev.reserve(path.size());
  for (std::size_t k = 0; k < path.size(); ++k) {
    ev.push_back({path.times()[k], projector_from_ray(path.rays()[k])});
  }
  return History(std::move(ev));
}

bool History::fine_grained() const {
  for (const auto& e : events_) {
    if (!e.projector.fine_grained()) return false;
  }
  return true;
}

std::vector<double> History::times() const {
  std::vector<double> t;
  t.reserve(events_.size());
  for (const auto& e : events_) t.push_back(e.time);
  return t;
}

std::string HistorySet::label(std::size_t h) const {
  std::string s;
  for (std::size_t k = 0; k < choices[h].size(); ++k) {
    if (k) s += '.';
    s += 't' + std::to_string(k) + ':' + std::to_string(choices[h][k]);
  }
  return s;
}

CMatrix class_operator(const History& h, const PropagatorTable& table) {
  if (h.dim() != table.dim()) throw DimensionError("history and dynamics dimensions differ");
  const Eigen::Index d = h.dim();
  CMatrix c = CMatrix::Identity(d, d);
  for (const auto& e : h.events()) {
    const CMatrix& u = table.at(e.time).matrix();
    c = (u.adjoint() * e.projector.matrix() * u) * c;
  }
  return c;
}

Complex trace_class_operator(const History& h, const PropagatorTable& table) {
  return class_operator(h, table).trace();
}

std::size_t tuple_count(const History& h) {
  std::size_t n = 1;
  for (const auto& e : h.events()) {
    n *= static_cast<std::size_t>(e.projector.rank());
    if (n > kMaxTuples) {
      throw InvariantError("fine-grained tuple count exceeds the cap of 4096");
    }
  }
  return n;
}

std::vector<std::vector<StateVector>> event_bases(const History& h) {
  std::vector<std::vector<StateVector>> bases;
  bases.reserve(h.size());
  for (const auto& e : h.events()) bases.push_back(orthonormal_basis_of(e.projector));
  return bases;
}

Complex coarse_phase_sum(const History& h, const PropagatorTable& table) {
  if (h.dim() != table.dim()) throw DimensionError("history and dynamics dimensions differ");
  tuple_count(h);
  // Heisenberg-picture basis vectors U†(t_k)|ψ^r_{t_k}⟩.
  std::vector<std::vector<StateVector>> bases = event_bases(h);
  std::vector<std::size_t> extents;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const CMatrix ud = table.at(h.events()[k].time).matrix().adjoint();
    for (auto& v : bases[k]) v = normalize(ud * v.amplitudes());
    extents.push_back(bases[k].size());
  }
  Complex total = 0.0;
  std::vector<StateVector> chain;
  for_each_tuple(extents, [&](const std::vector<std::size_t>& idx) {
    chain.clear();
    for (std::size_t k = 0; k < idx.size(); ++k) chain.push_back(bases[k][idx[k]]);
    // Tr |φ⟩⟨φ| = 1 for a single event.
    total += chain.size() == 1 ? Complex(1.0) : overlap_product(chain);
  });
  return total;
}

HistorySet build_history_set(const std::vector<std::vector<Projector>>& per_time_alternatives,
                             const std::vector<double>& times) {
  if (per_time_alternatives.empty()) throw DimensionError("history set needs at least one time");
  if (per_time_alternatives.size() != times.size()) {
    throw DimensionError("history set: one alternative list per time required");
  }
  const Eigen::Index d = per_time_alternatives.front().empty()
                             ? 0
                             : per_time_alternatives.front().front().dim();
  std::size_t total = 1;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto& alts = per_time_alternatives[k];
    if (alts.empty()) throw InvariantError("history set: empty alternative list at time slot " + std::to_string(k));
    if (k > 0 && !(times[k] > times[k - 1])) throw InvariantError("history set: times must strictly increase");
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& p : alts) {
      if (p.dim() != d) throw DimensionError("history set: projectors of different dimension");
      sum += p.matrix();
    }
    const double exhaust = max_abs(sum - CMatrix::Identity(d, d));
    if (exhaust > tol::kHistoryAlgebra) {
      std::ostringstream os;
      os << "history set not exhaustive at time slot " << k << " (t = " << times[k]
         << "): |sum - 1|_max = " << exhaust;
      throw InvariantError(os.str());
    }
    for (std::size_t a = 0; a < alts.size(); ++a) {
      for (std::size_t b = 0; b < alts.size(); ++b) {
        if (a == b) continue;
        const double excl = max_abs(alts[a].matrix() * alts[b].matrix());
        if (excl > tol::kHistoryAlgebra) {
          std::ostringstream os;
          os << "history set not exclusive at time slot " << k << " (t = " << times[k]
             << "): |P" << a << " P" << b << "|_max = " << excl;
          throw InvariantError(os.str());
        }
      }
    }
    total *= alts.size();
    if (total > kMaxTuples) throw InvariantError("history set exceeds the cap of 4096 histories");
  }

  HistorySet set;
  set.times = times;
  set.alternatives = per_time_alternatives;
  std::vector<std::size_t> extents;
  for (const auto& alts : per_time_alternatives) extents.push_back(alts.size());
  for_each_tuple(extents, [&](const std::vector<std::size_t>& idx) {
    std::vector<Event> ev;
    std::vector<int> choice;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      ev.push_back({times[k], per_time_alternatives[k][idx[k]]});
      choice.push_back(static_cast<int>(idx[k]));
    }
    set.histories.emplace_back(std::move(ev));
    set.choices.push_back(std::move(choice));
  });
  return set;
}

}  // namespace histphase
