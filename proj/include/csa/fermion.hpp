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
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "csa/pauli.hpp"
#include "csa/tensor.hpp"

namespace csa {

enum class Mapping { kJordanWigner, kBravyiKitaev };

std::string to_string(Mapping m);
/// Accepts "jw", "bk" and the long names, case-insensitively.
Mapping parse_mapping(std::string_view name);

/// Electronic Hamiltonian over spatial orbitals:
///
///   H = scalar_term + sum_pq h_pq E_pq + sum_pqrs g_pqrs E_pq E_rs
///
/// with E_pq = sum_sigma a+_{p sigma} a_{q sigma}. Spin-orbital 2p is p-up,
/// 2p+1 is p-down.
struct IntegralTensors {
  int n_spatial = 0;
  int n_electrons = 0;
  double scalar_term = 0.0;
  Eigen::MatrixXd h;
  Tensor4 g;

  int n_spin_orbitals() const { return 2 * n_spatial; }

  /// Throws ValidationError unless shapes agree, h is symmetric,
  /// g_pqrs = g_rspq and 0 <= n_electrons <= 2 n_spatial.
  void validate(double tolerance = 1e-10) const;

  /// g_pqrs = g_qprs (together with the pair swap: the 8-fold real-orbital symmetry).
  bool has_real_orbital_symmetry(double tolerance = 1e-10) const;
};

/// Linear fermion-to-qubit encoding b = B n over GF(2).
///
/// Row r of B says which occupation numbers qubit r stores the parity of.
/// Jordan-Wigner is B = 1; Bravyi-Kitaev is the Fenwick-tree matrix, which
/// truncates naturally when the mode count is not a power of two.
class BinaryEncoding {
 public:
  static BinaryEncoding jordan_wigner(int n_modes);
  static BinaryEncoding bravyi_kitaev(int n_modes);
  static BinaryEncoding for_mapping(Mapping m, int n_modes);

  int n_modes() const { return n_modes_; }
  /// Bit r set iff B[row][r] = 1.
  std::uint64_t row(int r) const { return rows_[r]; }

  std::uint64_t encode(std::uint64_t occupations) const;
  std::uint64_t decode(std::uint64_t qubits) const;

  /// Qubits flipped when occupation of mode j changes.
  std::uint64_t update_set(int j) const;
  /// Qubits whose joint parity is n_j.
  std::uint64_t occupation_set(int j) const;
  /// Qubits whose joint parity is sum_{k<j} n_k.
  std::uint64_t parity_set(int j) const;

  /// a_j = X_U Z_P (1 - Z_S) / 2 as two phased terms.
  std::vector<PauliTerm> annihilation(int j) const;
  /// Adjoint of annihilation(j).
  std::vector<PauliTerm> creation(int j) const;
  /// a+_p a_q.
  std::vector<PauliTerm> excitation(int p, int q) const;

 private:
  BinaryEncoding(int n_modes, std::vector<std::uint64_t> rows);

  int n_modes_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> inverse_rows_;
};

/// Qubit image of H under the given mapping.
PauliSum map_hamiltonian(const IntegralTensors& t, Mapping m);
PauliSum jordan_wigner(const IntegralTensors& t);
PauliSum bravyi_kitaev(const IntegralTensors& t);

/// Qubit image of constant + sum_pq one_body_pq E_pq + sum_pqrs two_body_pqrs E_pq E_rs.
/// The two-body tensor is taken in the symmetrized product convention, so it
/// must satisfy two_body_pqrs = two_body_rspq for the result to be exact.
PauliSum fragment_to_pauli(const Tensor4& two_body, Mapping m,
                           const Eigen::MatrixXd* one_body = nullptr, double constant = 0.0);

/// Qubit image of sum_pq h_pq E_pq alone.
PauliSum one_body_to_pauli(const Eigen::MatrixXd& h, Mapping m);

/// Qubit image of sum_ij h_ij a+_i a_j with h indexed by spin-orbital.
PauliSum spin_orbital_one_body_to_pauli(const Eigen::MatrixXd& h, Mapping m);

/// Total number operator over n_modes spin-orbitals.
PauliSum number_operator(int n_modes, Mapping m);

/// Diagonalization of the one-electron matrix: rotation^T h rotation = diag(eigenvalues).
struct OneBodyFragment {
  Eigen::MatrixXd rotation;
  Eigen::VectorXd eigenvalues;
};

/// Eigenvalues ascending, each column's first largest entry positive,
/// determinant +1. An already diagonal h gives the identity rotation.
OneBodyFragment one_body_fragment(const Eigen::MatrixXd& h);
inline OneBodyFragment one_body_fragment(const IntegralTensors& t) { return one_body_fragment(t.h); }

}  // namespace csa
