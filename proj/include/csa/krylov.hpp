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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace csa {

struct KrylovOptions {
  int krylov_dim = 30;
  int max_restarts = 500;
  double tolerance = 1e-8;
};

template <class Scalar>
struct KrylovResult {
  double eigenvalue = 0.0;
  std::vector<Scalar> vector;
  double residual = 0.0;
  int matvecs = 0;
  bool converged = false;
};

namespace detail {

inline double real_part(double v) { return v; }
inline double real_part(const std::complex<double>& v) { return v.real(); }
inline double conj_if(double v) { return v; }
inline std::complex<double> conj_if(const std::complex<double>& v) { return std::conj(v); }

template <class Scalar>
Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  Scalar s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += conj_if(a[i]) * b[i];
  return s;
}

template <class Scalar>
double norm(const std::vector<Scalar>& a) {
  return std::sqrt(real_part(dot(a, a)));
}

}  // namespace detail

/// Lowest eigenpair of a hermitian operator given only its action.
///
/// Explicitly restarted Lanczos with full reorthogonalization: each cycle
/// builds a Krylov basis of at most `krylov_dim` vectors from the current
/// Ritz vector and restarts from the new lowest Ritz vector until
/// ||A x - theta x|| <= tolerance. `apply(in, out)` must overwrite `out`.
template <class Scalar, class Apply>
KrylovResult<Scalar> lowest_eigenpair(std::size_t dim, Apply&& apply, std::vector<Scalar> start,
                                      const KrylovOptions& options) {
  KrylovResult<Scalar> result;
  std::vector<Scalar> x = std::move(start);
  double nx = detail::norm(x);
  if (nx == 0.0) {
    x.assign(dim, Scalar{});
    x[0] = Scalar{1};
    nx = 1.0;
  }
  for (auto& v : x) v /= nx;

  std::vector<Scalar> w(dim);
  const int m_max = static_cast<int>(std::min<std::size_t>(dim, std::max(2, options.krylov_dim)));
  for (int cycle = 0; cycle <= options.max_restarts; ++cycle) {
    std::vector<std::vector<Scalar>> basis{x};
    std::vector<double> alpha;
    std::vector<double> beta;
    for (int j = 0; j < m_max; ++j) {
      apply(basis[j], w);
      ++result.matvecs;
      alpha.push_back(detail::real_part(detail::dot(basis[j], w)));
      // Two passes of Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
          const Scalar c = detail::dot(b, w);
          for (std::size_t i = 0; i < dim; ++i) w[i] -= c * b[i];
        }
      }
      const double bnorm = detail::norm(w);
      if (j + 1 == m_max || bnorm < 1e-12) break;
      beta.push_back(bnorm);
      std::vector<Scalar> next(dim);
      for (std::size_t i = 0; i < dim; ++i) next[i] = w[i] / bnorm;
      basis.push_back(std::move(next));
    }

    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) t(i, i) = alpha[i];
    for (int i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::VectorXd y = es.eigenvectors().col(0);
    result.eigenvalue = es.eigenvalues()(0);

    std::fill(x.begin(), x.end(), Scalar{});
    for (int k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < dim; ++i) x[i] += y(k) * basis[k][i];
    }
    nx = detail::norm(x);
    for (auto& v : x) v /= nx;

    apply(x, w);
    ++result.matvecs;
    const double theta = detail::real_part(detail::dot(x, w));
    for (std::size_t i = 0; i < dim; ++i) w[i] -= theta * x[i];
    result.residual = detail::norm(w);
    result.eigenvalue = theta;
    if (result.residual <= options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.vector = std::move(x);
  return result;
}

}  // namespace csa
