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

// Dense reference constructions used as independent oracles in tests.
#pragma once

#include <array>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "csa/fermion.hpp"
#include "csa/pauli.hpp"
#include "csa/tensor.hpp"

namespace oracle {

using Cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using MatR = Eigen::MatrixXd;

inline MatC single_qubit(char letter) {
  MatC m(2, 2);
  switch (letter) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Cplx(0, -1), Cplx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

/// Kronecker product with qubit 0 as the least significant factor.
inline MatC kron_qubits(const std::vector<MatC>& per_qubit) {
  MatC out = MatC::Identity(1, 1);
  for (const auto& m : per_qubit) {
    MatC next(out.rows() * m.rows(), out.cols() * m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) next.block(i * out.rows(), j * out.cols(), out.rows(), out.cols()) = m(i, j) * out;
    out = next;
  }
  return out;
}

inline MatC dense(const csa::PauliProduct& p) {
  std::vector<MatC> f;
  for (int q = 0; q < p.n_qubits(); ++q) f.push_back(single_qubit(p.letter(q)));
  return kron_qubits(f);
}

inline MatC dense(const csa::PauliSum& s) {
  const Eigen::Index d = Eigen::Index{1} << s.n_qubits();
  MatC out = MatC::Zero(d, d);
  for (const auto& [p, c] : s) out += c * dense(p);
  return out;
}

/// Jordan-Wigner annihilators on n_modes modes, occupied = |1>.
inline std::vector<MatR> annihilators(int n_modes) {
  MatR lower(2, 2), z(2, 2), id = MatR::Identity(2, 2);
  lower << 0, 1, 0, 0;
  z << 1, 0, 0, -1;
  std::vector<MatR> out;
  for (int j = 0; j < n_modes; ++j) {
    std::vector<MatC> f;
    for (int k = 0; k < n_modes; ++k) f.push_back(k < j ? MatC(z.cast<Cplx>()) : k == j ? MatC(lower.cast<Cplx>()) : MatC(id.cast<Cplx>()));
    out.push_back(kron_qubits(f).real());
  }
  return out;
}

/// Spin-summed E_pq over n spatial orbitals (spin-orbital 2p + sigma).
inline std::vector<MatR> excitation_ops(int n) {
  const auto a = annihilators(2 * n);
  std::vector<MatR> e;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) e.push_back(a[2 * p].transpose() * a[2 * q] + a[2 * p + 1].transpose() * a[2 * q + 1]);
  return e;
}

inline MatR dense_two_body(const csa::Tensor4& g, const std::vector<MatR>& e, const MatR* h = nullptr, double c = 0.0) {
  const int n = g.n();
  MatR out = c * MatR::Identity(e[0].rows(), e[0].cols());
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (h != nullptr) out += (*h)(p, q) * e[p * n + q];
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          if (g(p, q, r, s) != 0.0) out += g(p, q, r, s) * e[p * n + q] * e[r * n + s];
    }
  return out;
}

inline MatR dense_hamiltonian(const csa::IntegralTensors& t) {
  return dense_two_body(t.g, excitation_ops(t.n_spatial), &t.h, t.scalar_term);
}

/// Random integrals with the real-orbital 8-fold symmetry.
inline csa::IntegralTensors random_integrals(int n, int ne, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  csa::IntegralTensors t;
  t.n_spatial = n;
  t.n_electrons = ne;
  t.scalar_term = u(rng);
  t.h = MatR::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) t.h(p, q) = t.h(q, p) = u(rng);
  t.g = csa::Tensor4(n);
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = r; s < n; ++s) {
          if (p * n + q > r * n + s) continue;
          const double v = u(rng);
          for (auto [a, b, c, d] : {std::array{p, q, r, s}, {q, p, r, s}, {p, q, s, r}, {q, p, s, r}, {r, s, p, q}, {s, r, p, q}, {r, s, q, p}, {s, r, q, p}})
            t.g(a, b, c, d) = v;
        }
  return t;
}

inline csa::PauliProduct random_product(int n, std::mt19937_64& rng) {
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return csa::PauliProduct(n, rng() & mask, rng() & mask);
}

}  // namespace oracle
