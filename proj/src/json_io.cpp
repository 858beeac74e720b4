// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

#include <histphase/json_io.hpp>

namespace histphase::io {

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_json(v[k]));
  return out;
}

json to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const History& h) {
  json out = json::array();
  for (const auto& e : h.events()) {
    out.push_back({{"time", e.time}, {"projector", to_json(e.projector.matrix())}});
  }
  return out;
}

json to_json(const DecoherenceMatrix& m) {
  json labels = json::array();
  for (std::size_t h = 0; h < m.size(); ++h) labels.push_back(m.set.label(h));
  return {{"labels", labels}, {"values", to_json(m.values)}};
}

json to_json(const ConsistencyReport& r) {
  return {{"epsilon", r.epsilon},
          {"is_consistent", r.is_consistent},
          {"max_offdiag_modulus", r.max_offdiag_modulus},
          {"probabilities", r.probabilities}};
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InvariantError("expected a complex number as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

CVector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvariantError("expected a nonempty vector");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v[static_cast<Eigen::Index>(k)] = complex_from_json(j[k]);
  return v;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvariantError("expected a nonempty matrix");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw InvariantError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
    }
  }
  return m;
}

History history_from_json(const json& j) {
  if (!j.is_array()) throw InvariantError("history must be a list of events");
  std::vector<Event> ev;
  for (const auto& e : j) {
    if (!e.contains("time") || !e.contains("projector")) {
      throw InvariantError("history event needs 'time' and 'projector'");
    }
    ev.push_back({e.at("time").get<double>(), Projector(matrix_from_json(e.at("projector")))});
  }
  return History(std::move(ev));
}

}  // namespace histphase::io
