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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "csa/fermion.hpp"
#include "csa/statevec.hpp"
#include "csa/tensor.hpp"

namespace csa {

/// Real determinant basis with fixed spin-up and spin-down electron counts.
///
/// A determinant is a spin-orbital occupation mask (mode 2p = p up,
/// 2p+1 = p down). Amplitudes follow the Jordan-Wigner sign convention, so
/// a sector vector embeds into the qubit register by a pure basis relabeling
/// under either mapping. The spin-summed E_pq preserve the sector.
class FockSector {
 public:
  /// Every determinant with n_alpha up and n_beta down electrons.
  FockSector(int n_spatial, int n_alpha, int n_beta);
  /// The given determinants only (sorted, deduplicated); excitations leaving
  /// the set are discarded.
  FockSector(int n_spatial, std::vector<std::uint64_t> determinants);

  int n_spatial() const { return n_spatial_; }
  int dim() const { return static_cast<int>(dets_.size()); }
  std::uint64_t determinant(int i) const { return dets_[i]; }
  const std::vector<std::uint64_t>& determinants() const { return dets_; }
  /// Position of `det`, or -1.
  int index_of(std::uint64_t det) const;

  /// Column p*n+q holds E_pq v.
  Eigen::MatrixXd excitations(const Eigen::VectorXd& v) const;
  /// sum_pq E_pq chi[:, p*n+q].
  Eigen::VectorXd contract(const Eigen::MatrixXd& chi) const;

 private:
  struct Transition {
    int src;
    int dst;
    double sign;
  };
  void build();

  int n_spatial_ = 0;
  std::vector<std::uint64_t> dets_;
  std::vector<std::vector<Transition>> transitions_;  // indexed by p*n+q
};

/// a+_i a_j on a spin-orbital mask: the new mask and JW sign, or sign 0
/// when the result vanishes.
std::pair<std::uint64_t, double> excite(std::uint64_t det, int i, int j);

/// Determinants reachable from `seed` by at most `depth` applications of
/// spin-summed E_pq, sorted.
std::vector<std::uint64_t> excitation_closure(int n_spatial, const std::vector<std::uint64_t>& seed,
                                              int depth);

/// Mask of the n_electrons lowest spin-orbitals.
std::uint64_t hf_determinant(int n_electrons);

/// scalar + sum h_pq E_pq v + sum g_pqrs E_pq E_rs v inside the sector.
Eigen::VectorXd apply_hamiltonian(const IntegralTensors& t, const FockSector& sector,
                                  const Eigen::VectorXd& v);

struct SectorGroundState {
  double energy = 0.0;
  int n_alpha = 0;
  int n_beta = 0;
  FockSector sector{1, std::vector<std::uint64_t>{}};
  Eigen::VectorXd vector;
  double residual = 0.0;
};

/// Lowest state with exactly t.n_electrons electrons, over every spin split
/// (ties go to the most balanced split). Each split is solved by restarted
/// Lanczos started from its lowest determinant plus a seeded perturbation.
SectorGroundState sector_ground_state(const IntegralTensors& t, const EigensolverOptions& options = {});

/// Qubit-register image of a sector vector under the mapping.
Wavefunction embed(const FockSector& sector, const Eigen::VectorXd& v, Mapping m);

/// Expectations and variances of two-body fragments
///   F = constant + sum h_pq E_pq + sum f_pqrs E_pq E_rs
/// on one fixed real state, evaluated on the determinants within two
/// excitations of the state's support.
class FragmentVarianceEvaluator {
 public:
  /// Sector amplitudes; need not be normalized beforehand.
  FragmentVarianceEvaluator(int n_spatial, const std::vector<std::pair<std::uint64_t, double>>& support);

  static FragmentVarianceEvaluator from_sector(const FockSector& sector, const Eigen::VectorXd& v);
  /// Decodes a qubit state. Throws ValidationError when the state mixes
  /// electron sectors or is not real up to a global phase.
  static FragmentVarianceEvaluator from_wavefunction(const Wavefunction& psi, int n_spatial, Mapping m);

  int dim() const { return closure_.dim(); }

  double expectation(const Tensor4& f, const Eigen::MatrixXd* one_body = nullptr) const;
  double variance(const Tensor4& f, const Eigen::MatrixXd* one_body = nullptr) const;
  /// Variance of the pure two-body fragment; `grad` receives dVar/df_pqrs.
  double variance_with_gradient(const Tensor4& f, Tensor4* grad) const;

 private:
  Eigen::VectorXd apply(const Tensor4& f, const Eigen::MatrixXd* one_body) const;

  int n_ = 0;
  FockSector closure_;
  Eigen::VectorXd psi_;
  Eigen::MatrixXd excited_;  // column rs = E_rs psi
};

}  // namespace csa
