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

#include <compare>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace csa {

/// Global phase returned by Pauli multiplication: i^k for k = 0..3.
enum class Phase : std::uint8_t { kPlusOne = 0, kPlusI = 1, kMinusOne = 2, kMinusI = 3 };

inline Phase operator*(Phase a, Phase b) {
  return static_cast<Phase>((static_cast<unsigned>(a) + static_cast<unsigned>(b)) & 3u);
}
inline Phase phase_from_power(int k) { return static_cast<Phase>(((k % 4) + 4) % 4); }
std::complex<double> to_complex(Phase p);
std::string to_string(Phase p);

/// Phase-free N-qubit Pauli product in symplectic form.
///
/// Bit k of `x_mask` is set when qubit k carries X or Y, bit k of `z_mask`
/// when it carries Z or Y. Qubit 0 is the least significant bit. Up to 64
/// qubits are supported.
class PauliProduct {
 public:
  static constexpr int kMaxQubits = 64;

  PauliProduct() = default;
  PauliProduct(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  static PauliProduct identity(int n_qubits) { return PauliProduct(n_qubits, 0, 0); }
  /// Single-letter product; `letter` is one of I, X, Y, Z (either case).
  static PauliProduct single(int n_qubits, int qubit, char letter);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  /// 'I', 'X', 'Y' or 'Z' for the given qubit.
  char letter(int qubit) const;
  int weight() const;
  bool is_identity() const { return (x_ | z_) == 0; }
  /// Number of Y letters.
  int y_count() const;

  /// Space separated letters, e.g. "X0 Z3 Y5"; empty for the identity.
  std::string to_string() const;

  friend bool operator==(const PauliProduct&, const PauliProduct&) = default;
  /// Canonical key order: qubit count, then x mask, then z mask.
  friend std::strong_ordering operator<=>(const PauliProduct&, const PauliProduct&) = default;

 private:
  int n_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PhasedProduct {
  Phase phase;
  PauliProduct product;
};

/// p * q = phase * product. Throws DimensionError on qubit-count mismatch.
PhasedProduct multiply(const PauliProduct& p, const PauliProduct& q);

/// True iff p and q commute as operators (symplectic inner product is zero).
bool commutes(const PauliProduct& p, const PauliProduct& q);

/// True iff on every qubit the letters agree or one of them is the identity.
bool qubitwise_commutes(const PauliProduct& p, const PauliProduct& q);

/// Default magnitude below which accumulated coefficients are dropped.
inline constexpr double kAccumulationTolerance = 1e-10;

/// Real coefficient times a power of i, times a Pauli product.
struct PauliTerm {
  double coefficient;
  Phase phase;
  PauliProduct product;
};

/// Hermitian operator written as a real linear combination of Pauli products.
///
/// Terms are kept in canonical product order; no stored coefficient is
/// smaller in magnitude than the tolerance it was built with.
class PauliSum {
 public:
  using TermMap = std::map<PauliProduct, double>;

  PauliSum() = default;
  explicit PauliSum(int n_qubits);
  /// Validates qubit counts; drops entries with |c| < tolerance.
  PauliSum(int n_qubits, TermMap terms, double tolerance = kAccumulationTolerance);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  TermMap::const_iterator begin() const { return terms_.begin(); }
  TermMap::const_iterator end() const { return terms_.end(); }

  /// Coefficient of `p`, zero when absent.
  double coefficient(const PauliProduct& p) const;
  bool contains(const PauliProduct& p) const { return terms_.count(p) != 0; }
  /// Sum of absolute coefficients.
  double one_norm() const;
  /// Copy with every coefficient multiplied by `s`.
  PauliSum scaled(double s) const;
  /// Copy without the identity term.
  PauliSum without_identity() const;

  friend bool operator==(const PauliSum&, const PauliSum&) = default;

 private:
  int n_qubits_ = 0;
  TermMap terms_;
};

/// Merge a sequence of phased terms into a PauliSum.
///
/// Contributions to the same product are summed in a canonical order, so the
/// result does not depend on the order of `terms`. Throws NonHermitianError
/// if an imaginary part above `tolerance` survives, DimensionError if a
/// product does not have `n_qubits` qubits.
PauliSum accumulate(int n_qubits, std::span<const PauliTerm> terms,
                    double tolerance = kAccumulationTolerance);

/// a + s*b, accumulated with the default tolerance.
PauliSum add(const PauliSum& a, const PauliSum& b, double s = 1.0);

/// Unmerged terms of the operator product a*b.
std::vector<PauliTerm> product_terms(const PauliSum& a, const PauliSum& b);

/// True iff [a, b] = 0 symbolically (all commutator coefficients below tolerance).
bool sums_commute(const PauliSum& a, const PauliSum& b, double tolerance = kAccumulationTolerance);

}  // namespace csa

template <>
struct std::hash<csa::PauliProduct> {
  std::size_t operator()(const csa::PauliProduct& p) const noexcept {
    std::uint64_t h = p.x_mask() * 0x9E3779B97F4A7C15ull;
    h ^= p.z_mask() + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h ^ static_cast<std::uint64_t>(p.n_qubits()));
  }
};
