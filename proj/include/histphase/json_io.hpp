// Copyright 2026 The histphase Authors
// SPDX-License-Identifier: Apache-2.0

// JSON forms used by the CLI:
//   vector            [[re, im], ...]
//   matrix            [[[re, im], ...], ...]        (row major)
//   history           [{"time": t, "projector": matrix}, ...]
//   decoherence       {"labels": [...], "values": matrix}
//   consistency       {"epsilon", "is_consistent", "max_offdiag_modulus", "probabilities"}

#pragma once

#include <histphase/decoherence.hpp>

#include <nlohmann/json.hpp>

namespace histphase::io {

using nlohmann::json;

json to_json(Complex z);
json to_json(const CVector& v);
json to_json(const CMatrix& m);
json to_json(const History& h);
json to_json(const DecoherenceMatrix& m);
json to_json(const ConsistencyReport& r);

/// Parsers throw InvariantError on malformed input.
Complex complex_from_json(const json& j);
CVector vector_from_json(const json& j);
CMatrix matrix_from_json(const json& j);
History history_from_json(const json& j);

}  // namespace histphase::io
