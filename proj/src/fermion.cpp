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

#include "csa/fermion.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>

#include "csa/errors.hpp"

namespace csa {
namespace {

bool parity(std::uint64_t v) { return (std::popcount(v) & 1) != 0; }

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::uint64_t> gf2_inverse(int n, const std::vector<std::uint64_t>& rows) {
  std::vector<std::uint64_t> a = rows;
  std::vector<std::uint64_t> inv(n);
  for (int i = 0; i < n; ++i) inv[i] = std::uint64_t{1} << i;
  for (int col = 0; col < n; ++col) {
    const std::uint64_t bit = std::uint64_t{1} << col;
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (a[r] & bit) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw ValidationError("encoding matrix is singular over GF(2)");
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r != col && (a[r] & bit)) {
        a[r] ^= a[col];
        inv[r] ^= inv[col];
      }
    }
  }
  return inv;
}

std::vector<PauliTerm> multiply_terms(const std::vector<PauliTerm>& a, const std::vector<PauliTerm>& b) {
  std::vector<PauliTerm> out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a) {
    for (const auto& tb : b) {
      auto [phase, prod] = multiply(ta.product, tb.product);
      out.push_back({ta.coefficient * tb.coefficient, ta.phase * tb.phase * phase, prod});
    }
  }
  return out;
}

// Spin-summed E_pq images for every spatial pair, indexed p * n + q.
std::vector<std::vector<PauliTerm>> excitation_images(const BinaryEncoding& enc, int n_spatial) {
  std::vector<std::vector<PauliTerm>> images(static_cast<std::size_t>(n_spatial) * n_spatial);
  for (int p = 0; p < n_spatial; ++p) {
    for (int q = 0; q < n_spatial; ++q) {
      auto& img = images[p * n_spatial + q];
      for (int spin = 0; spin < 2; ++spin) {
        auto t = enc.excitation(2 * p + spin, 2 * q + spin);
        img.insert(img.end(), t.begin(), t.end());
      }
    }
  }
  return images;
}

void check_square(const Eigen::MatrixXd& m, int n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError(std::string(what) + " must be " + std::to_string(n) + "x" +
                         std::to_string(n) + ", got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

}  // namespace

std::string to_string(Mapping m) {
  return m == Mapping::kJordanWigner ? "jw" : "bk";
}

Mapping parse_mapping(std::string_view name) {
  const auto s = lower(name);
  if (s == "jw" || s == "jordan-wigner" || s == "jordan_wigner") return Mapping::kJordanWigner;
  if (s == "bk" || s == "bravyi-kitaev" || s == "bravyi_kitaev") return Mapping::kBravyiKitaev;
  throw ValidationError("unknown mapping '" + std::string(name) + "' (expected jw or bk)");
}

void IntegralTensors::validate(double tolerance) const {
  if (n_spatial <= 0) throw ValidationError("n_spatial must be positive");
  if (2 * n_spatial > PauliProduct::kMaxQubits) {
    throw ValidationError("at most 32 spatial orbitals are supported");
  }
  if (n_electrons < 0 || n_electrons > 2 * n_spatial) {
    throw ValidationError("n_electrons = " + std::to_string(n_electrons) + " outside [0, " +
                          std::to_string(2 * n_spatial) + "]");
  }
  if (h.rows() != n_spatial || h.cols() != n_spatial) {
    throw DimensionError("h must be n_spatial x n_spatial");
  }
  if (g.n() != n_spatial) throw DimensionError("g must have n_spatial^4 entries");
  for (int p = 0; p < n_spatial; ++p) {
    for (int q = 0; q < p; ++q) {
      if (std::abs(h(p, q) - h(q, p)) > tolerance) {
        throw ValidationError("h is not symmetric at (" + std::to_string(p) + ", " +
                              std::to_string(q) + ")");
      }
    }
  }
  const int n = n_spatial;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          if (std::abs(g(p, q, r, s) - g(r, s, p, q)) > tolerance) {
            throw ValidationError("g_pqrs != g_rspq at (" + std::to_string(p) + "," +
                                  std::to_string(q) + "," + std::to_string(r) + "," +
                                  std::to_string(s) + ")");
          }
        }
}

bool IntegralTensors::has_real_orbital_symmetry(double tolerance) const {
  const int n = n_spatial;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          if (std::abs(g(p, q, r, s) - g(q, p, r, s)) > tolerance) return false;
          if (std::abs(g(p, q, r, s) - g(r, s, p, q)) > tolerance) return false;
        }
  return true;
}

BinaryEncoding::BinaryEncoding(int n_modes, std::vector<std::uint64_t> rows)
    : n_modes_(n_modes), rows_(std::move(rows)), inverse_rows_(gf2_inverse(n_modes, rows_)) {}

BinaryEncoding BinaryEncoding::jordan_wigner(int n_modes) {
  if (n_modes <= 0 || n_modes > PauliProduct::kMaxQubits) throw DimensionError("bad mode count");
  std::vector<std::uint64_t> rows(n_modes);
  for (int i = 0; i < n_modes; ++i) rows[i] = std::uint64_t{1} << i;
  return BinaryEncoding(n_modes, std::move(rows));
}

BinaryEncoding BinaryEncoding::bravyi_kitaev(int n_modes) {
  if (n_modes <= 0 || n_modes > PauliProduct::kMaxQubits) throw DimensionError("bad mode count");
  // Qubit i stores the parity of modes (i+1 - lowbit(i+1)) .. i.
  std::vector<std::uint64_t> rows(n_modes);
  for (int i = 0; i < n_modes; ++i) {
    const unsigned k = static_cast<unsigned>(i) + 1;
    const unsigned first = k - (k & (~k + 1));
    for (unsigned m = first; m <= static_cast<unsigned>(i); ++m) rows[i] |= std::uint64_t{1} << m;
  }
  return BinaryEncoding(n_modes, std::move(rows));
}

BinaryEncoding BinaryEncoding::for_mapping(Mapping m, int n_modes) {
  return m == Mapping::kJordanWigner ? jordan_wigner(n_modes) : bravyi_kitaev(n_modes);
}

std::uint64_t BinaryEncoding::encode(std::uint64_t occupations) const {
  std::uint64_t out = 0;
  for (int r = 0; r < n_modes_; ++r) {
    if (parity(rows_[r] & occupations)) out |= std::uint64_t{1} << r;
  }
  return out;
}

std::uint64_t BinaryEncoding::decode(std::uint64_t qubits) const {
  std::uint64_t out = 0;
  for (int r = 0; r < n_modes_; ++r) {
    if (parity(inverse_rows_[r] & qubits)) out |= std::uint64_t{1} << r;
  }
  return out;
}

std::uint64_t BinaryEncoding::update_set(int j) const {
  std::uint64_t out = 0;
  for (int r = 0; r < n_modes_; ++r) {
    if ((rows_[r] >> j) & 1u) out |= std::uint64_t{1} << r;
  }
  return out;
}

std::uint64_t BinaryEncoding::occupation_set(int j) const { return inverse_rows_[j]; }

std::uint64_t BinaryEncoding::parity_set(int j) const {
  std::uint64_t out = 0;
  for (int k = 0; k < j; ++k) out ^= inverse_rows_[k];
  return out;
}

std::vector<PauliTerm> BinaryEncoding::annihilation(int j) const {
  if (j < 0 || j >= n_modes_) throw DimensionError("mode index out of range");
  const PauliProduct xu(n_modes_, update_set(j), 0);
  const PauliProduct zp(n_modes_, 0, parity_set(j));
  const PauliProduct zs(n_modes_, 0, occupation_set(j));
  const auto [ph1, t1] = multiply(xu, zp);
  const auto [ph2, t2] = multiply(t1, zs);
  return {{0.5, ph1, t1}, {-0.5, ph1 * ph2, t2}};
}

std::vector<PauliTerm> BinaryEncoding::creation(int j) const {
  if (j < 0 || j >= n_modes_) throw DimensionError("mode index out of range");
  const PauliProduct xu(n_modes_, update_set(j), 0);
  const PauliProduct zp(n_modes_, 0, parity_set(j));
  const PauliProduct zs(n_modes_, 0, occupation_set(j));
  const auto [ph1, t1] = multiply(zp, xu);
  const auto [ph2, t2] = multiply(zs, t1);
  return {{0.5, ph1, t1}, {-0.5, ph1 * ph2, t2}};
}

std::vector<PauliTerm> BinaryEncoding::excitation(int p, int q) const {
  return multiply_terms(creation(p), annihilation(q));
}

PauliSum fragment_to_pauli(const Tensor4& two_body, Mapping m, const Eigen::MatrixXd* one_body,
                           double constant) {
  const int n = two_body.n();
  if (n <= 0) throw DimensionError("fragment tensor is empty");
  if (one_body) check_square(*one_body, n, "one-body matrix");
  const auto enc = BinaryEncoding::for_mapping(m, 2 * n);
  const auto images = excitation_images(enc, n);
  const int n_qubits = 2 * n;

  std::vector<PauliTerm> terms;
  if (constant != 0.0) terms.push_back({constant, Phase::kPlusOne, PauliProduct::identity(n_qubits)});
  if (one_body) {
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        const double c = (*one_body)(p, q);
        if (c == 0.0) continue;
        for (const auto& t : images[p * n + q]) terms.push_back({c * t.coefficient, t.phase, t.product});
      }
    }
  }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double c = two_body(p, q, r, s);
          if (c == 0.0) continue;
          for (const auto& a : images[p * n + q]) {
            for (const auto& b : images[r * n + s]) {
              auto [phase, prod] = multiply(a.product, b.product);
              terms.push_back({c * a.coefficient * b.coefficient, a.phase * b.phase * phase, prod});
            }
          }
        }
  return accumulate(n_qubits, terms);
}

PauliSum map_hamiltonian(const IntegralTensors& t, Mapping m) {
  t.validate();
  return fragment_to_pauli(t.g, m, &t.h, t.scalar_term);
}

PauliSum jordan_wigner(const IntegralTensors& t) { return map_hamiltonian(t, Mapping::kJordanWigner); }

PauliSum bravyi_kitaev(const IntegralTensors& t) { return map_hamiltonian(t, Mapping::kBravyiKitaev); }

PauliSum one_body_to_pauli(const Eigen::MatrixXd& h, Mapping m) {
  const int n = static_cast<int>(h.rows());
  check_square(h, n, "one-body matrix");
  return fragment_to_pauli(Tensor4(n), m, &h, 0.0);
}

PauliSum spin_orbital_one_body_to_pauli(const Eigen::MatrixXd& h, Mapping m) {
  const int n = static_cast<int>(h.rows());
  check_square(h, n, "spin-orbital matrix");
  const auto enc = BinaryEncoding::for_mapping(m, n);
  std::vector<PauliTerm> terms;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (h(i, j) == 0.0) continue;
      for (const auto& t : enc.excitation(i, j)) terms.push_back({h(i, j) * t.coefficient, t.phase, t.product});
    }
  }
  return accumulate(n, terms);
}

PauliSum number_operator(int n_modes, Mapping m) {
  return spin_orbital_one_body_to_pauli(Eigen::MatrixXd::Identity(n_modes, n_modes), m);
}

OneBodyFragment one_body_fragment(const Eigen::MatrixXd& h) {
  const int n = static_cast<int>(h.rows());
  check_square(h, n, "one-body matrix");
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-10) throw ValidationError("h is not symmetric");
  const Eigen::MatrixXd off = h - Eigen::MatrixXd(h.diagonal().asDiagonal());
  if (n > 0 && off.cwiseAbs().maxCoeff() == 0.0) return {Eigen::MatrixXd::Identity(n, n), h.diagonal()};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (h + h.transpose()));
  Eigen::MatrixXd v = solver.eigenvectors();
  // Sign convention: first largest-magnitude component of each column is positive.
  for (int c = 0; c < n; ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (int r = 0; r < n; ++r) {
      if (std::abs(v(r, c)) > best + 1e-12) {
        best = std::abs(v(r, c));
        arg = r;
      }
    }
    if (v(arg, c) < 0) v.col(c) *= -1.0;
  }
  if (n > 0 && v.determinant() < 0) v.col(n - 1) *= -1.0;
  return {v, solver.eigenvalues()};
}

}  // namespace csa
