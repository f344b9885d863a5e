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
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "csa/fermion.hpp"
#include "csa/tensor.hpp"

namespace csa {

class FragmentVarianceEvaluator;
class Wavefunction;

/// Real orbital rotation exp(A) with A_ut = theta, A_tu = -theta for each
/// generator pair t > u. Angles are ordered (1,0), (2,0), (2,1), (3,0), ...
struct OrbitalRotation {
  int n = 0;
  std::vector<double> angles;

  static OrbitalRotation identity(int n) {
    return {n, std::vector<double>(static_cast<std::size_t>(n) * (n - 1) / 2, 0.0)};
  }
};

inline int angle_count(int n) { return n * (n - 1) / 2; }

/// Antisymmetric generator assembled from the angles.
Eigen::MatrixXd rotation_generator(const OrbitalRotation& r);
/// exp of the generator: orthogonal with determinant +1.
Eigen::MatrixXd rotation_matrix(const OrbitalRotation& r);

/// sum_tu lambda_tu (O^T n_t O)(O^T n_u O) in spin-summed orbital occupations.
struct CsaFragment {
  OrbitalRotation rotation;
  Eigen::MatrixXd lambda;  // symmetric n x n

  int n() const { return rotation.n; }
};

/// weight * L (x) L with L = transform * diag(omegas) * transform^T.
struct SvdFragment {
  double weight = 0.0;
  Eigen::VectorXd omegas;
  Eigen::MatrixXd transform;

  int n() const { return static_cast<int>(omegas.size()); }
};

using Fragment = std::variant<CsaFragment, SvdFragment>;

/// f_pqrs = sum_tu lambda_tu c^t_pq c^u_rs with c^t_pq = O_tp O_tq.
Tensor4 fragment_tensor(const CsaFragment& f);
Tensor4 fragment_tensor(const SvdFragment& f);
Tensor4 fragment_tensor(const Fragment& f);

/// The same operator written as a CSA fragment: lambda = weight omega omega^T,
/// rotation matrix = transform^T. Only the matrix is kept (no angles).
struct RotatedFragment {
  Eigen::MatrixXd rotation;  // O, rows are the new orbitals
  Eigen::MatrixXd lambda;
};
RotatedFragment rotated_form(const Fragment& f);

/// n(n+1)/2 lambda entries (upper triangle, row-major) then the angles.
std::vector<double> pack(const CsaFragment& f);
CsaFragment unpack(int n, const double* params);
inline int parameter_count(int n) { return n * n; }

/// Gradient of |residual - fragment_tensor(f)|^2 over pack(f).
std::vector<double> analytic_gradient(const CsaFragment& f, const Tensor4& residual);

enum class DecompositionMethod { kSvd, kFro, kGfro, kVgfro };
std::string to_string(DecompositionMethod m);

struct DecompositionResult {
  DecompositionMethod method = DecompositionMethod::kSvd;
  /// "eigendecomposition", "minimal-M", "fixed-M" or "greedy".
  std::string mode;
  std::vector<Fragment> fragments;
  Tensor4 residual_tensor;
  double residual_norm1 = 0.0;
  /// Residual 1-norm after each fragment (greedy and SVD) or each M tried (FRO).
  std::vector<double> residual_trace;
  /// Optimizer iterations spent per fragment (greedy) or per M (FRO).
  std::vector<int> iterations;
  std::uint64_t seed = 0;
  /// Restart index that produced the accepted FRO solution.
  int restart = 0;
  double wall_seconds = 0.0;
  bool converged = false;

  Tensor4 fragment_tensor(std::size_t i) const { return csa::fragment_tensor(fragments[i]); }
};

struct OptimizerOptions {
  int max_iterations = 10000;
  double gradient_tolerance = 1e-7;
  double function_tolerance = 1e-16;
  double parameter_tolerance = 1e-14;
  /// Initial angles are drawn uniformly from [-range, range].
  double angle_range = 0.1;
};

struct FroOptions {
  /// Joint fits need a tighter stop than greedy ones to reach a 1e-5
  /// residual 1-norm once n >= 6.
  OptimizerOptions optimizer{.gradient_tolerance = 1e-10};
  std::uint64_t seed = 0;
  /// Random starts per fragment count before giving up on that count.
  int restarts = 8;
  /// Minimal-M search stops here; 0 means n(n+1)/2.
  int max_fragments = 0;
};

struct GreedyOptions {
  OptimizerOptions optimizer;
  std::uint64_t seed = 0;
  /// Fragment cap; 0 means 20 n^2.
  int max_fragments = 0;
};

/// Eigendecomposition of the supermatrix, fragments taken in decreasing
/// |eigenvalue| until the residual 1-norm is at most norm_tol. Requires the
/// real-orbital 8-fold symmetry. Throws DecompositionError when even all
/// eigenpairs leave a larger residual.
DecompositionResult svd_factorize(const Tensor4& g, double norm_tol);
DecompositionResult svd_factorize(const IntegralTensors& t, double norm_tol);

/// Joint optimization of m fragments, best of options.restarts seeded starts.
/// converged is set when the residual 1-norm reaches norm_tol.
DecompositionResult fro(const Tensor4& g, int m, double norm_tol, const FroOptions& options = {});
DecompositionResult fro(const IntegralTensors& t, int m, double norm_tol, const FroOptions& options = {});

/// fro() with m = 1, 2, ... until the residual 1-norm reaches norm_tol.
/// Throws ConvergenceError (best residual attached) past max_fragments.
DecompositionResult fro_minimal(const Tensor4& g, double norm_tol, const FroOptions& options = {});
DecompositionResult fro_minimal(const IntegralTensors& t, double norm_tol, const FroOptions& options = {});

/// Greedy single-fragment fits with earlier fragments frozen.
DecompositionResult gfro(const Tensor4& g, double norm_tol, const GreedyOptions& options = {});
DecompositionResult gfro(const IntegralTensors& t, double norm_tol, const GreedyOptions& options = {});

/// gfro() whose first `mu` fits also penalize w times the fragment variance
/// on the reference state. With w = 0 the result equals gfro() exactly.
DecompositionResult vgfro(const Tensor4& g, double norm_tol, double w, int mu,
                          const FragmentVarianceEvaluator& reference, const GreedyOptions& options = {});
DecompositionResult vgfro(const IntegralTensors& t, double norm_tol, double w, int mu,
                          const Wavefunction& reference, Mapping mapping, const GreedyOptions& options = {});

}  // namespace csa
