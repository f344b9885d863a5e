// Copyright 2026 The csa-measure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "csa/decomposition.hpp"
#include "csa/fermion.hpp"
#include "csa/grouping.hpp"
#include "csa/pauli.hpp"

namespace csa {

/// Whole file as a string. Throws Error when it cannot be read.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Integral document (JSON):
///
///   { "n_spatial": 2, "n_electrons": 2, "scalar_term": 0.52,
///     "h": [[p, q, value], ...], "g": [[p, q, r, s, value], ...],
///     "symmetry": "8-fold" }
///
/// Omitted entries are zero. Each explicit entry is copied to the rest of
/// its symmetry orbit unless that position is listed explicitly too.
/// "symmetry" may be "8-fold" (default, real orbitals) or "2-fold"
/// (g_pqrs = g_rspq only). Extra fields are ignored. Errors name the line
/// for malformed JSON and the entry (counted from 1) for bad indices or
/// values.
IntegralTensors parse_integrals_text(std::string_view text);
IntegralTensors parse_integrals(const std::filesystem::path& path);

/// Canonical integral document: upper-triangle h, one g entry per 8-fold orbit
/// when the tensor has that symmetry (else per pair orbit).
std::string format_integrals(const IntegralTensors& t);

/// Pauli text file; see parse_pauli_sum.
PauliSum parse_pauli(const std::filesystem::path& path);

/// {"groups": [{"relation": "qwc", "terms": ["0.5 X0 Z1", ...]}, ...]}
std::string format_groups(const std::vector<FragmentGroup>& groups);

/// Fragments, residual trace, seed and (optionally) wall time.
std::string format_decomposition(const DecompositionResult& r, bool include_timing = true);

}  // namespace csa
