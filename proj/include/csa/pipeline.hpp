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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csa/decomposition.hpp"
#include "csa/fermion.hpp"
#include "csa/grouping.hpp"
#include "csa/statevec.hpp"

namespace csa {

enum class InputKind { kIntegrals, kPauli };
enum class Method { kQwcLf, kQwcSi, kFcSi, kSvd, kFro, kGfro, kVgfro };

std::string to_string(InputKind k);
std::string to_string(Method m);
InputKind parse_input_kind(std::string_view s);
/// "qwc-lf", "qwc_si", "FC_SI", "svd", ... (case and '-'/'_' insensitive).
Method parse_method(std::string_view s);
/// "ground" or "hf".
StateKind parse_state_kind(std::string_view s);

bool is_fermionic(Method m);
const std::vector<Method>& all_methods();

struct RunConfig {
  std::filesystem::path input;
  InputKind kind = InputKind::kIntegrals;
  Mapping mapping = Mapping::kBravyiKitaev;
  Method method = Method::kFcSi;
  double norm_tol = 1e-5;
  double w = 0.5;
  int mu = 30;
  StateKind state = StateKind::kExactGround;
  double epsilon = 1.0;
  std::uint64_t seed = 0;
  /// Random starts per fragment count in FRO.
  int fro_restarts = 8;
  EigensolverOptions eigensolver;

  /// Throws ValidationError for inconsistent settings.
  void validate() const;
};

struct StageTimes {
  double load = 0.0;
  double state = 0.0;
  double partition = 0.0;
  double variance = 0.0;
  double total = 0.0;
};

struct Report {
  RunConfig config;
  std::string input_name;
  int n_qubits = 0;
  /// Stored Pauli products of the mapped operator, identity included.
  std::size_t pauli_terms = 0;
  /// Measurable groups: qubit groups, or two-body fragments + 1.
  std::size_t groups = 0;
  std::optional<std::size_t> two_body_fragments;
  std::optional<double> residual_norm1;
  /// <H> on the state used for variances.
  double energy = 0.0;
  MeasurementReport measurement;
  std::vector<FragmentGroup> qubit_groups;
  std::optional<DecompositionResult> decomposition;
  std::vector<std::string> notes;
  StageTimes times;
};

/// map -> partition -> state -> variances -> allocation. Module errors are
/// rethrown with the stage name prefixed and their type preserved.
Report run(const RunConfig& config);

/// Self-describing JSON document. Timing is left out unless asked for, so
/// equal configs give byte-identical documents.
std::string report_document(const std::vector<Report>& reports, bool include_timing = false);

/// Aligned text table, one row per report.
std::string report_table(const std::vector<Report>& reports, bool include_timing = true);

}  // namespace csa
