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

#include <string>
#include <string_view>
#include <vector>

#include "csa/pauli.hpp"

namespace csa {

enum class Relation { kFullCommute, kQubitwiseCommute };

std::string to_string(Relation r);
/// "fc" / "qwc" (and the long names).
Relation parse_relation(std::string_view name);

/// Whether p and q may share a group under `r`.
bool compatible(const PauliProduct& p, const PauliProduct& q, Relation r);

/// A measurable fragment of a qubit operator: pairwise compatible terms.
struct FragmentGroup {
  PauliSum terms;
  Relation relation;
};

/// Sorted insertion: terms by descending |coefficient| (ties by canonical
/// product order) go into the first group compatible with every member,
/// otherwise open a new group. The identity term, if any, joins group 0.
std::vector<FragmentGroup> sorted_insertion(const PauliSum& h, Relation r);

/// Largest-first greedy coloring of the incompatibility graph. Vertices are
/// colored in decreasing degree order (ties by canonical term order) with the
/// smallest color unused by colored neighbours; color classes become groups.
/// The identity term, if any, joins group 0.
std::vector<FragmentGroup> largest_first(const PauliSum& h, Relation r);

/// Adjacency lists of the incompatibility graph over the non-identity terms
/// of `h`, in canonical term order.
std::vector<std::vector<int>> incompatibility_graph(const std::vector<PauliProduct>& terms, Relation r);

/// True iff the groups are disjoint, reproduce `original` coefficient by
/// coefficient (bitwise equal), and each group is pairwise compatible.
/// Human-readable problems are appended to `diagnostics` when given.
bool validate_groups(const std::vector<FragmentGroup>& groups, const PauliSum& original,
                     std::vector<std::string>* diagnostics = nullptr);

}  // namespace csa
