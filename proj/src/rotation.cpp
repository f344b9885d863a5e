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

#include <unsupported/Eigen/MatrixFunctions>

#include "csa/decomposition.hpp"
#include "csa/errors.hpp"
#include "optimizer.hpp"

namespace csa {

Eigen::MatrixXd rotation_generator(const OrbitalRotation& r) {
  if (r.n < 1 || static_cast<int>(r.angles.size()) != angle_count(r.n)) {
    throw DimensionError("rotation needs n(n-1)/2 angles");
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(r.n, r.n);
  int k = 0;
  for (int t = 1; t < r.n; ++t) {
    for (int u = 0; u < t; ++u) {
      a(u, t) = r.angles[k];
      a(t, u) = -r.angles[k];
      ++k;
    }
  }
  return a;
}

Eigen::MatrixXd rotation_matrix(const OrbitalRotation& r) { return rotation_generator(r).exp(); }

namespace {

void check_lambda(const CsaFragment& f) {
  if (f.lambda.rows() != f.n() || f.lambda.cols() != f.n()) {
    throw DimensionError("lambda must be n x n");
  }
}

Tensor4 tensor_from(const Eigen::MatrixXd& rotation, const Eigen::MatrixXd& lambda) {
  const int n = static_cast<int>(rotation.rows());
  const Eigen::MatrixXd c = detail::coefficient_matrix(rotation);
  const Eigen::MatrixXd sym = 0.5 * (lambda + lambda.transpose());
  const Eigen::MatrixXd m = c.transpose() * sym * c;
  // Mirror the upper triangle so f_pqrs == f_rspq holds bit for bit.
  Tensor4 out(n);
  auto s = out.supermatrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) s(i, j) = s(j, i) = m(i, j);
  }
  return out;
}

}  // namespace

Tensor4 fragment_tensor(const CsaFragment& f) {
  check_lambda(f);
  return tensor_from(rotation_matrix(f.rotation), f.lambda);
}

Tensor4 fragment_tensor(const SvdFragment& f) {
  const int n = f.n();
  const Eigen::MatrixXd l = f.transform * f.omegas.asDiagonal() * f.transform.transpose();
  Tensor4 out(n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) out(p, q, r, s) = f.weight * l(p, q) * l(r, s);
      }
    }
  }
  return out;
}

Tensor4 fragment_tensor(const Fragment& f) {
  return std::visit([](const auto& x) { return fragment_tensor(x); }, f);
}

RotatedFragment rotated_form(const Fragment& f) {
  if (const auto* c = std::get_if<CsaFragment>(&f)) {
    check_lambda(*c);
    return {rotation_matrix(c->rotation), 0.5 * (c->lambda + c->lambda.transpose())};
  }
  const auto& s = std::get<SvdFragment>(f);
  return {s.transform.transpose(), s.weight * s.omegas * s.omegas.transpose()};
}

std::vector<double> pack(const CsaFragment& f) {
  check_lambda(f);
  const int n = f.n();
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(parameter_count(n)));
  for (int t = 0; t < n; ++t) {
    for (int u = t; u < n; ++u) x.push_back(f.lambda(t, u));
  }
  x.insert(x.end(), f.rotation.angles.begin(), f.rotation.angles.end());
  if (static_cast<int>(x.size()) != parameter_count(n)) throw DimensionError("rotation needs n(n-1)/2 angles");
  return x;
}

CsaFragment unpack(int n, const double* params) {
  CsaFragment f;
  f.rotation.n = n;
  f.lambda.resize(n, n);
  int k = 0;
  for (int t = 0; t < n; ++t) {
    for (int u = t; u < n; ++u) f.lambda(t, u) = f.lambda(u, t) = params[k++];
  }
  f.rotation.angles.assign(params + k, params + k + angle_count(n));
  return f;
}

std::vector<double> analytic_gradient(const CsaFragment& f, const Tensor4& residual) {
  const int n = f.n();
  if (residual.n() != n) throw DimensionError("residual and fragment orbital counts differ");
  const std::vector<double> x = pack(f);
  const auto s = detail::fragment_state(n, x.data());
  RowMajorMatrix fm = RowMajorMatrix::Zero(n * n, n * n);
  detail::add_supermatrix(s, fm);
  const RowMajorMatrix gf = -2.0 * (residual.supermatrix() - fm);
  std::vector<double> grad(x.size());
  detail::backprop(s, gf, grad.data());
  return grad;
}

}  // namespace csa
