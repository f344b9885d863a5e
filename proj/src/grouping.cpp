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

#include "csa/grouping.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "csa/errors.hpp"
#include "parallel.hpp"

namespace csa {
namespace {

struct Split {
  std::vector<PauliProduct> products;
  std::vector<double> coefficients;
  bool has_identity = false;
  double identity_coefficient = 0.0;
};

Split split_identity(const PauliSum& h) {
  Split s;
  for (const auto& [p, c] : h) {
    if (p.is_identity()) {
      s.has_identity = true;
      s.identity_coefficient = c;
    } else {
      s.products.push_back(p);
      s.coefficients.push_back(c);
    }
  }
  return s;
}

std::vector<FragmentGroup> build_groups(const PauliSum& h, const Split& s,
                                        const std::vector<std::vector<int>>& members, Relation r) {
  std::vector<FragmentGroup> groups;
  groups.reserve(std::max<std::size_t>(members.size(), 1));
  for (const auto& m : members) {
    PauliSum::TermMap terms;
    for (int i : m) terms.emplace(s.products[i], s.coefficients[i]);
    groups.push_back({PauliSum(h.n_qubits(), std::move(terms), 0.0), r});
  }
  if (s.has_identity) {
    if (groups.empty()) groups.push_back({PauliSum(h.n_qubits()), r});
    PauliSum::TermMap t = groups.front().terms.terms();
    t.emplace(PauliProduct::identity(h.n_qubits()), s.identity_coefficient);
    groups.front().terms = PauliSum(h.n_qubits(), std::move(t), 0.0);
  }
  return groups;
}

}  // namespace

std::string to_string(Relation r) { return r == Relation::kFullCommute ? "fc" : "qwc"; }

Relation parse_relation(std::string_view name) {
  std::string s(name);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "fc" || s == "full" || s == "full_commute") return Relation::kFullCommute;
  if (s == "qwc" || s == "qubitwise" || s == "qubitwise_commute") return Relation::kQubitwiseCommute;
  throw ValidationError("unknown relation '" + std::string(name) + "'");
}

bool compatible(const PauliProduct& p, const PauliProduct& q, Relation r) {
  return r == Relation::kFullCommute ? commutes(p, q) : qubitwise_commutes(p, q);
}

std::vector<FragmentGroup> sorted_insertion(const PauliSum& h, Relation r) {
  const Split s = split_identity(h);
  std::vector<int> order(s.products.size());
  std::iota(order.begin(), order.end(), 0);
  // Products are already in canonical order, so a stable sort breaks ties by key.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(s.coefficients[a]) > std::abs(s.coefficients[b]);
  });

  std::vector<std::vector<int>> members;
  for (int i : order) {
    bool placed = false;
    for (auto& group : members) {
      const bool fits = std::all_of(group.begin(), group.end(), [&](int j) {
        return compatible(s.products[i], s.products[j], r);
      });
      if (fits) {
        group.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) members.push_back({i});
  }
  return build_groups(h, s, members, r);
}

std::vector<std::vector<int>> incompatibility_graph(const std::vector<PauliProduct>& terms, Relation r) {
  const int n = static_cast<int>(terms.size());
  std::vector<std::vector<int>> adjacency(n);
  // Rows are independent; each worker fills whole rows so the result is deterministic.
  parallel_for(n, [&](int i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && !compatible(terms[i], terms[j], r)) adjacency[i].push_back(j);
    }
  });
  return adjacency;
}

std::vector<FragmentGroup> largest_first(const PauliSum& h, Relation r) {
  const Split s = split_identity(h);
  const int n = static_cast<int>(s.products.size());
  const auto adjacency = incompatibility_graph(s.products, r);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return adjacency[a].size() > adjacency[b].size(); });

  std::vector<int> color(n, -1);
  int n_colors = 0;
  std::vector<char> used;
  for (int v : order) {
    used.assign(static_cast<std::size_t>(n_colors) + 1, 0);
    for (int u : adjacency[v]) {
      if (color[u] >= 0) used[color[u]] = 1;
    }
    int c = 0;
    while (used[c]) ++c;
    color[v] = c;
    n_colors = std::max(n_colors, c + 1);
  }

  std::vector<std::vector<int>> members(n_colors);
  for (int v = 0; v < n; ++v) members[color[v]].push_back(v);
  return build_groups(h, s, members, r);
}

bool validate_groups(const std::vector<FragmentGroup>& groups, const PauliSum& original,
                     std::vector<std::string>* diagnostics) {
  bool ok = true;
  auto report = [&](std::string msg) {
    ok = false;
    if (diagnostics) diagnostics->push_back(std::move(msg));
  };

  PauliSum::TermMap seen;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& group = groups[g];
    if (group.terms.n_qubits() != original.n_qubits()) {
      report("group " + std::to_string(g) + " has the wrong qubit count");
      continue;
    }
    std::vector<PauliProduct> products;
    for (const auto& [p, c] : group.terms) {
      if (!seen.emplace(p, c).second) {
        report("term " + p.to_string() + " appears in more than one group");
      }
      products.push_back(p);
    }
    for (std::size_t i = 0; i < products.size(); ++i) {
      for (std::size_t j = i + 1; j < products.size(); ++j) {
        if (!compatible(products[i], products[j], group.relation)) {
          report("group " + std::to_string(g) + ": '" + products[i].to_string() + "' and '" +
                 products[j].to_string() + "' violate " + to_string(group.relation));
        }
      }
    }
  }
  for (const auto& [p, c] : original) {
    auto it = seen.find(p);
    if (it == seen.end()) {
      report("term '" + p.to_string() + "' missing from groups");
    } else if (it->second != c) {
      report("term '" + p.to_string() + "' coefficient changed");
    }
  }
  for (const auto& [p, c] : seen) {
    if (!original.contains(p)) report("term '" + p.to_string() + "' not in the original sum");
  }
  return ok;
}

}  // namespace csa
