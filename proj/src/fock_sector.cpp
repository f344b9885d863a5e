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

#include "csa/fock_sector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <set>

#include "csa/errors.hpp"
#include "csa/krylov.hpp"

namespace csa {

namespace {

std::vector<std::uint64_t> combinations(int n, int k) {
  std::vector<std::uint64_t> out;
  if (k < 0 || k > n) return out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (std::popcount(m) == k) out.push_back(m);
  }
  return out;
}

std::uint64_t interleave(std::uint64_t alpha, std::uint64_t beta, int n) {
  std::uint64_t det = 0;
  for (int p = 0; p < n; ++p) {
    if ((alpha >> p) & 1u) det |= std::uint64_t{1} << (2 * p);
    if ((beta >> p) & 1u) det |= std::uint64_t{1} << (2 * p + 1);
  }
  return det;
}

void check_orbitals(int n_spatial) {
  if (n_spatial < 1 || n_spatial > 32) throw DimensionError("spatial orbital count must be in [1, 32]");
}

}  // namespace

std::pair<std::uint64_t, double> excite(std::uint64_t det, int i, int j) {
  const std::uint64_t bi = std::uint64_t{1} << i;
  const std::uint64_t bj = std::uint64_t{1} << j;
  if (!(det & bj)) return {det, 0.0};
  if (i == j) return {det, 1.0};
  if (det & bi) return {det, 0.0};
  const int lo = std::min(i, j);
  const int hi = std::max(i, j);
  const std::uint64_t between = ((std::uint64_t{1} << hi) - 1) & ~((std::uint64_t{1} << (lo + 1)) - 1);
  const double sign = (std::popcount(det & between) & 1) ? -1.0 : 1.0;
  return {(det ^ bj) | bi, sign};
}

FockSector::FockSector(int n_spatial, int n_alpha, int n_beta) : n_spatial_(n_spatial) {
  check_orbitals(n_spatial);
  if (n_alpha < 0 || n_alpha > n_spatial || n_beta < 0 || n_beta > n_spatial) {
    throw ValidationError("spin electron counts outside [0, n_spatial]");
  }
  for (std::uint64_t a : combinations(n_spatial, n_alpha)) {
    for (std::uint64_t b : combinations(n_spatial, n_beta)) dets_.push_back(interleave(a, b, n_spatial));
  }
  std::sort(dets_.begin(), dets_.end());
  build();
}

FockSector::FockSector(int n_spatial, std::vector<std::uint64_t> determinants)
    : n_spatial_(n_spatial), dets_(std::move(determinants)) {
  check_orbitals(n_spatial);
  std::sort(dets_.begin(), dets_.end());
  dets_.erase(std::unique(dets_.begin(), dets_.end()), dets_.end());
  build();
}

int FockSector::index_of(std::uint64_t det) const {
  const auto it = std::lower_bound(dets_.begin(), dets_.end(), det);
  if (it == dets_.end() || *it != det) return -1;
  return static_cast<int>(it - dets_.begin());
}

void FockSector::build() {
  const int n = n_spatial_;
  transitions_.assign(static_cast<std::size_t>(n) * n, {});
  for (int src = 0; src < dim(); ++src) {
    const std::uint64_t det = dets_[src];
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        for (int spin = 0; spin < 2; ++spin) {
          const auto [next, sign] = excite(det, 2 * p + spin, 2 * q + spin);
          if (sign == 0.0) continue;
          const int dst = index_of(next);
          if (dst < 0) continue;
          transitions_[p * n + q].push_back({src, dst, sign});
        }
      }
    }
  }
}

Eigen::MatrixXd FockSector::excitations(const Eigen::VectorXd& v) const {
  const int n2 = n_spatial_ * n_spatial_;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim(), n2);
  for (int pq = 0; pq < n2; ++pq) {
    for (const auto& t : transitions_[pq]) out(t.dst, pq) += t.sign * v(t.src);
  }
  return out;
}

Eigen::VectorXd FockSector::contract(const Eigen::MatrixXd& chi) const {
  const int n2 = n_spatial_ * n_spatial_;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
  for (int pq = 0; pq < n2; ++pq) {
    for (const auto& t : transitions_[pq]) out(t.dst) += t.sign * chi(t.src, pq);
  }
  return out;
}

std::vector<std::uint64_t> excitation_closure(int n_spatial, const std::vector<std::uint64_t>& seed,
                                              int depth) {
  std::set<std::uint64_t> all(seed.begin(), seed.end());
  std::vector<std::uint64_t> frontier(all.begin(), all.end());
  for (int level = 0; level < depth && !frontier.empty(); ++level) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t det : frontier) {
      for (int i = 0; i < 2 * n_spatial; ++i) {
        for (int j = i % 2; j < 2 * n_spatial; j += 2) {
          const auto [d, sign] = excite(det, i, j);
          if (sign != 0.0 && all.insert(d).second) next.push_back(d);
        }
      }
    }
    frontier = std::move(next);
  }
  return {all.begin(), all.end()};
}

std::uint64_t hf_determinant(int n_electrons) {
  if (n_electrons < 0 || n_electrons > 64) throw ValidationError("electron count out of range");
  return n_electrons == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_electrons) - 1;
}

Eigen::VectorXd apply_hamiltonian(const IntegralTensors& t, const FockSector& sector, const Eigen::VectorXd& v) {
  if (sector.n_spatial() != t.n_spatial) throw DimensionError("sector and integrals differ in orbital count");
  const int n = t.n_spatial;
  const Eigen::MatrixXd psi = sector.excitations(v);
  const Eigen::MatrixXd chi = psi * t.g.supermatrix().transpose();
  Eigen::VectorXd out = sector.contract(chi);
  Eigen::VectorXd hvec(n * n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) hvec(p * n + q) = t.h(p, q);
  }
  out += psi * hvec;
  out += t.scalar_term * v;
  return out;
}

SectorGroundState sector_ground_state(const IntegralTensors& t, const EigensolverOptions& options) {
  t.validate();
  const int n = t.n_spatial;
  const int ne = t.n_electrons;
  if (2 * n > options.qubit_cap) {
    throw DimensionError("integrals exceed the dense-state qubit cap of " + std::to_string(options.qubit_cap));
  }
  SectorGroundState best;
  best.energy = std::numeric_limits<double>::infinity();
  bool found = false;
  for (int na = (ne + 1) / 2; na <= std::min(n, ne); ++na) {
    const int nb = ne - na;
    if (nb < 0 || nb > n) continue;
    FockSector sector(n, na, nb);
    const std::size_t dim = static_cast<std::size_t>(sector.dim());
    std::vector<double> start(dim, 0.0);
    const int hf = sector.index_of(hf_determinant(ne));
    start[hf >= 0 ? hf : 0] = 1.0;
    if (options.perturbation > 0.0 && dim > 1) {
      std::mt19937_64 rng(options.seed);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      std::vector<double> noise(dim);
      double nn = 0.0;
      for (auto& x : noise) {
        x = u(rng);
        nn += x * x;
      }
      for (std::size_t i = 0; i < dim; ++i) start[i] += options.perturbation * noise[i] / std::sqrt(nn);
    }
    KrylovOptions ko;
    ko.krylov_dim = options.krylov_dim;
    ko.max_restarts = options.max_restarts;
    ko.tolerance = options.tolerance;
    auto res = lowest_eigenpair<double>(
        dim,
        [&](const std::vector<double>& in, std::vector<double>& out) {
          const Eigen::Map<const Eigen::VectorXd> x(in.data(), static_cast<Eigen::Index>(dim));
          const Eigen::VectorXd y = apply_hamiltonian(t, sector, x);
          std::copy(y.data(), y.data() + dim, out.begin());
        },
        std::move(start), ko);
    if (!res.converged) throw ConvergenceError("sector eigensolver did not converge", res.residual);
    if (!found || res.eigenvalue < best.energy - 1e-8) {
      found = true;
      best.energy = res.eigenvalue;
      best.n_alpha = na;
      best.n_beta = nb;
      best.vector = Eigen::Map<const Eigen::VectorXd>(res.vector.data(), static_cast<Eigen::Index>(dim));
      best.residual = res.residual;
      best.sector = std::move(sector);
    }
  }
  if (!found) throw ValidationError("no spin sector holds the requested electron count");
  // Deterministic sign: largest component positive.
  Eigen::Index imax = 0;
  best.vector.cwiseAbs().maxCoeff(&imax);
  if (best.vector(imax) < 0) best.vector = -best.vector;
  return best;
}

Wavefunction embed(const FockSector& sector, const Eigen::VectorXd& v, Mapping m) {
  const int nq = 2 * sector.n_spatial();
  if (v.size() != sector.dim()) throw DimensionError("vector length differs from sector dimension");
  const auto enc = BinaryEncoding::for_mapping(m, nq);
  std::vector<Amplitude> amps(std::size_t{1} << nq);
  for (int i = 0; i < sector.dim(); ++i) amps[enc.encode(sector.determinant(i))] = v(i);
  return Wavefunction(nq, std::move(amps)).normalized();
}

FragmentVarianceEvaluator::FragmentVarianceEvaluator(
    int n_spatial, const std::vector<std::pair<std::uint64_t, double>>& support)
    : n_(n_spatial), closure_(n_spatial, std::vector<std::uint64_t>{}) {
  check_orbitals(n_spatial);
  std::vector<std::uint64_t> seed;
  for (const auto& [det, amp] : support) {
    if (amp != 0.0) seed.push_back(det);
  }
  if (seed.empty()) throw ValidationError("state has no support");
  closure_ = FockSector(n_spatial, excitation_closure(n_spatial, seed, 2));
  psi_ = Eigen::VectorXd::Zero(closure_.dim());
  for (const auto& [det, amp] : support) psi_(closure_.index_of(det)) += amp;
  const double nrm = psi_.norm();
  psi_ /= nrm;
  excited_ = closure_.excitations(psi_);
}

FragmentVarianceEvaluator FragmentVarianceEvaluator::from_sector(const FockSector& sector, const Eigen::VectorXd& v) {
  std::vector<std::pair<std::uint64_t, double>> support;
  for (int i = 0; i < sector.dim(); ++i) {
    if (v(i) != 0.0) support.emplace_back(sector.determinant(i), v(i));
  }
  return FragmentVarianceEvaluator(sector.n_spatial(), support);
}

FragmentVarianceEvaluator FragmentVarianceEvaluator::from_wavefunction(const Wavefunction& psi, int n_spatial,
                                                                       Mapping m) {
  if (psi.n_qubits() != 2 * n_spatial) throw DimensionError("state width is not 2 * n_spatial");
  const auto enc = BinaryEncoding::for_mapping(m, psi.n_qubits());
  std::size_t imax = 0;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    if (std::abs(psi[i]) > std::abs(psi[imax])) imax = i;
  }
  const Amplitude phase = std::conj(psi[imax]) / std::abs(psi[imax]);
  const std::uint64_t ref = enc.decode(imax);
  const auto spin_counts = [](std::uint64_t det) {
    return std::pair{std::popcount(det & 0x5555555555555555ull), std::popcount(det & 0xAAAAAAAAAAAAAAAAull)};
  };
  const auto ref_counts = spin_counts(ref);
  std::vector<std::pair<std::uint64_t, double>> support;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const Amplitude a = psi[i] * phase;
    if (std::abs(a) <= 1e-14) continue;
    if (std::abs(a.imag()) > 1e-8) throw ValidationError("state is not real up to a global phase");
    const std::uint64_t det = enc.decode(i);
    if (std::abs(a) > 1e-10 && spin_counts(det) != ref_counts) {
      throw ValidationError("state mixes electron-number or spin sectors");
    }
    if (spin_counts(det) == ref_counts) support.emplace_back(det, a.real());
  }
  return FragmentVarianceEvaluator(n_spatial, support);
}

Eigen::VectorXd FragmentVarianceEvaluator::apply(const Tensor4& f, const Eigen::MatrixXd* one_body) const {
  if (f.n() != n_) throw DimensionError("fragment tensor has the wrong orbital count");
  const Eigen::MatrixXd chi = excited_ * f.supermatrix().transpose();
  Eigen::VectorXd eta = closure_.contract(chi);
  if (one_body != nullptr) {
    if (one_body->rows() != n_ || one_body->cols() != n_) throw DimensionError("one-body matrix has the wrong shape");
    Eigen::VectorXd hvec(n_ * n_);
    for (int p = 0; p < n_; ++p) {
      for (int q = 0; q < n_; ++q) hvec(p * n_ + q) = (*one_body)(p, q);
    }
    eta += excited_ * hvec;
  }
  return eta;
}

double FragmentVarianceEvaluator::expectation(const Tensor4& f, const Eigen::MatrixXd* one_body) const {
  return psi_.dot(apply(f, one_body));
}

double FragmentVarianceEvaluator::variance(const Tensor4& f, const Eigen::MatrixXd* one_body) const {
  const Eigen::VectorXd eta = apply(f, one_body);
  const double mean = psi_.dot(eta);
  return std::max(0.0, eta.squaredNorm() - mean * mean);
}

double FragmentVarianceEvaluator::variance_with_gradient(const Tensor4& f, Tensor4* grad) const {
  const Eigen::VectorXd eta = apply(f, nullptr);
  const double mean = psi_.dot(eta);
  const double var = eta.squaredNorm() - mean * mean;
  if (grad != nullptr) {
    const int n2 = n_ * n_;
    const Eigen::MatrixXd xi = closure_.excitations(eta);
    // Column pq of the primed matrices is column qp of the originals.
    Eigen::MatrixXd psi_t(excited_.rows(), n2);
    Eigen::MatrixXd xi_t(xi.rows(), n2);
    for (int p = 0; p < n_; ++p) {
      for (int q = 0; q < n_; ++q) {
        psi_t.col(p * n_ + q) = excited_.col(q * n_ + p);
        xi_t.col(p * n_ + q) = xi.col(q * n_ + p);
      }
    }
    const Eigen::MatrixXd g = xi_t.transpose() * excited_ + psi_t.transpose() * xi -
                              2.0 * mean * (psi_t.transpose() * excited_);
    *grad = Tensor4(n_);
    grad->supermatrix() = g;
  }
  return std::max(0.0, var);
}

}  // namespace csa
