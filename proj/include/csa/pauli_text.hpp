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

#include <optional>
#include <string>
#include <string_view>

#include "csa/pauli.hpp"

namespace csa {

/// Renders one term per line as `<coefficient> <letters>` (e.g. `0.5 X0 Z3`),
/// preceded by a `# n_qubits = N` header. Coefficients use the shortest
/// representation that parses back to the same double.
std::string format_pauli_sum(const PauliSum& sum);

/// Parses the text format written by format_pauli_sum. `#` lines are comments;
/// a `# n_qubits = N` comment fixes the width, otherwise it is one past the
/// largest qubit index seen (or `n_qubits` when given). Repeated products are
/// merged. Throws ParseError naming the offending line.
PauliSum parse_pauli_sum(std::string_view text, std::optional<int> n_qubits = std::nullopt);

/// Shortest round-trip decimal form of `v`.
std::string format_double(double v);

}  // namespace csa
