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

#include "csa/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "csa/errors.hpp"

namespace csa {
namespace {

int popcount(std::uint64_t v) { return std::popcount(v); }

std::uint64_t mask_for(int n_qubits) {
  return n_qubits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_qubits) - 1);
}

void require_same_size(const PauliProduct& p, const PauliProduct& q) {
  if (p.n_qubits() != q.n_qubits()) {
    throw DimensionError("Pauli products act on " + std::to_string(p.n_qubits()) + " and " +
                         std::to_string(q.n_qubits()) + " qubits");
  }
}

}  // namespace

std::complex<double> to_complex(Phase p) {
  switch (p) {
    case Phase::kPlusOne:
      return {1.0, 0.0};
    case Phase::kPlusI:
      return {0.0, 1.0};
    case Phase::kMinusOne:
      return {-1.0, 0.0};
    case Phase::kMinusI:
      return {0.0, -1.0};
  }
  return {1.0, 0.0};
}

std::string to_string(Phase p) {
  switch (p) {
    case Phase::kPlusOne:
      return "+1";
    case Phase::kPlusI:
      return "+i";
    case Phase::kMinusOne:
      return "-1";
    case Phase::kMinusI:
      return "-i";
  }
  return "?";
}

PauliProduct::PauliProduct(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : n_qubits_(n_qubits), x_(x_mask), z_(z_mask) {
  if (n_qubits <= 0 || n_qubits > kMaxQubits) {
    throw DimensionError("qubit count must be in [1, 64], got " + std::to_string(n_qubits));
  }
  const std::uint64_t valid = mask_for(n_qubits);
  if ((x_mask | z_mask) & ~valid) {
    throw DimensionError("Pauli mask has bits beyond qubit " + std::to_string(n_qubits - 1));
  }
}

PauliProduct PauliProduct::single(int n_qubits, int qubit, char letter) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw DimensionError("qubit index " + std::to_string(qubit) + " out of range for " +
                         std::to_string(n_qubits) + " qubits");
  }
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (letter) {
    case 'I':
    case 'i':
      return PauliProduct(n_qubits, 0, 0);
    case 'X':
    case 'x':
      return PauliProduct(n_qubits, bit, 0);
    case 'Y':
    case 'y':
      return PauliProduct(n_qubits, bit, bit);
    case 'Z':
    case 'z':
      return PauliProduct(n_qubits, 0, bit);
    default:
      throw ValidationError(std::string("unknown Pauli letter '") + letter + "'");
  }
}

char PauliProduct::letter(int qubit) const {
  const bool x = (x_ >> qubit) & 1u;
  const bool z = (z_ >> qubit) & 1u;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

int PauliProduct::weight() const { return popcount(x_ | z_); }

int PauliProduct::y_count() const { return popcount(x_ & z_); }

std::string PauliProduct::to_string() const {
  std::string out;
  for (int k = 0; k < n_qubits_; ++k) {
    const char c = letter(k);
    if (c == 'I') continue;
    if (!out.empty()) out += ' ';
    out += c;
    out += std::to_string(k);
  }
  return out;
}

// P = i^{|x&z|} X^x Z^z. Moving Z^{az} past X^{bx} costs (-1)^{|az&bx|}.
PhasedProduct multiply(const PauliProduct& p, const PauliProduct& q) {
  require_same_size(p, q);
  const std::uint64_t x = p.x_mask() ^ q.x_mask();
  const std::uint64_t z = p.z_mask() ^ q.z_mask();
  const int power = popcount(p.x_mask() & p.z_mask()) + popcount(q.x_mask() & q.z_mask()) +
                    2 * popcount(p.z_mask() & q.x_mask()) - popcount(x & z);
  return {phase_from_power(power), PauliProduct(p.n_qubits(), x, z)};
}

bool commutes(const PauliProduct& p, const PauliProduct& q) {
  require_same_size(p, q);
  return ((popcount(p.x_mask() & q.z_mask()) + popcount(p.z_mask() & q.x_mask())) & 1) == 0;
}

bool qubitwise_commutes(const PauliProduct& p, const PauliProduct& q) {
  require_same_size(p, q);
  const std::uint64_t both = (p.x_mask() | p.z_mask()) & (q.x_mask() | q.z_mask());
  return (((p.x_mask() ^ q.x_mask()) | (p.z_mask() ^ q.z_mask())) & both) == 0;
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits <= 0 || n_qubits > PauliProduct::kMaxQubits) {
    throw DimensionError("qubit count must be in [1, 64], got " + std::to_string(n_qubits));
  }
}

PauliSum::PauliSum(int n_qubits, TermMap terms, double tolerance) : PauliSum(n_qubits) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->first.n_qubits() != n_qubits) {
      throw DimensionError("term " + it->first.to_string() + " has " +
                           std::to_string(it->first.n_qubits()) + " qubits, sum has " +
                           std::to_string(n_qubits));
    }
    if (!std::isfinite(it->second)) throw ValidationError("non-finite Pauli coefficient");
    it = std::abs(it->second) < tolerance ? terms.erase(it) : std::next(it);
  }
  terms_ = std::move(terms);
}

double PauliSum::coefficient(const PauliProduct& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0.0 : it->second;
}

double PauliSum::one_norm() const {
  double s = 0.0;
  for (const auto& [p, c] : terms_) s += std::abs(c);
  return s;
}

PauliSum PauliSum::scaled(double s) const {
  TermMap t;
  for (const auto& [p, c] : terms_) t.emplace(p, c * s);
  return PauliSum(n_qubits_, std::move(t), 0.0);
}

PauliSum PauliSum::without_identity() const {
  TermMap t = terms_;
  t.erase(PauliProduct::identity(n_qubits_));
  return PauliSum(n_qubits_, std::move(t), 0.0);
}

PauliSum accumulate(int n_qubits, std::span<const PauliTerm> terms, double tolerance) {
  struct Contribution {
    PauliProduct product;
    double re;
    double im;
  };
  std::vector<Contribution> contributions;
  contributions.reserve(terms.size());
  for (const auto& t : terms) {
    if (t.product.n_qubits() != n_qubits) {
      throw DimensionError("term " + t.product.to_string() + " has " +
                           std::to_string(t.product.n_qubits()) + " qubits, expected " +
                           std::to_string(n_qubits));
    }
    const std::complex<double> c = t.coefficient * to_complex(t.phase);
    contributions.push_back({t.product, c.real(), c.imag()});
  }
  // Sorting fixes the floating-point summation order per product.
  std::sort(contributions.begin(), contributions.end(), [](const auto& a, const auto& b) {
    if (a.product != b.product) return a.product < b.product;
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });

  PauliSum::TermMap merged;
  for (std::size_t i = 0; i < contributions.size();) {
    std::size_t j = i;
    double re = 0.0;
    double im = 0.0;
    for (; j < contributions.size() && contributions[j].product == contributions[i].product; ++j) {
      re += contributions[j].re;
      im += contributions[j].im;
    }
    if (std::abs(im) > tolerance) {
      throw NonHermitianError("imaginary coefficient " + std::to_string(im) + " on " +
                              contributions[i].product.to_string());
    }
    if (std::abs(re) >= tolerance) merged.emplace_hint(merged.end(), contributions[i].product, re);
    i = j;
  }
  return PauliSum(n_qubits, std::move(merged), tolerance);
}

PauliSum add(const PauliSum& a, const PauliSum& b, double s) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionError("cannot add sums of different widths");
  std::vector<PauliTerm> terms;
  terms.reserve(a.size() + b.size());
  for (const auto& [p, c] : a) terms.push_back({c, Phase::kPlusOne, p});
  for (const auto& [p, c] : b) terms.push_back({s * c, Phase::kPlusOne, p});
  return accumulate(a.n_qubits(), terms);
}

std::vector<PauliTerm> product_terms(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionError("cannot multiply sums of different widths");
  std::vector<PauliTerm> out;
  out.reserve(a.size() * b.size());
  for (const auto& [p, cp] : a) {
    for (const auto& [q, cq] : b) {
      auto [phase, r] = multiply(p, q);
      out.push_back({cp * cq, phase, r});
    }
  }
  return out;
}

bool sums_commute(const PauliSum& a, const PauliSum& b, double tolerance) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionError("cannot commute sums of different widths");
  // [P, Q] = 2PQ when P and Q anticommute, zero otherwise.
  std::unordered_map<PauliProduct, std::complex<double>> comm;
  for (const auto& [p, cp] : a) {
    for (const auto& [q, cq] : b) {
      if (commutes(p, q)) continue;
      auto [phase, r] = multiply(p, q);
      comm[r] += 2.0 * cp * cq * to_complex(phase);
    }
  }
  return std::all_of(comm.begin(), comm.end(),
                     [&](const auto& kv) { return std::abs(kv.second) <= tolerance; });
}

}  // namespace csa
