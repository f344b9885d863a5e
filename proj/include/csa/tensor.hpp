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

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace csa {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense real 4-index tensor t_{pq,rs} over n orbitals, stored row-major so
/// that it doubles as the n^2 x n^2 supermatrix with row pq = p*n+q and
/// column rs = r*n+s.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int n() const { return n_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(int p, int q, int r, int s) { return data_[index(p, q, r, s)]; }
  double operator()(int p, int q, int r, int s) const { return data_[index(p, q, r, s)]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  Eigen::Map<RowMajorMatrix> supermatrix() { return {data_.data(), n_ * n_, n_ * n_}; }
  Eigen::Map<const RowMajorMatrix> supermatrix() const { return {data_.data(), n_ * n_, n_ * n_}; }

  /// Sum of absolute entries.
  double norm1() const {
    double s = 0.0;
    for (double v : data_) s += std::abs(v);
    return s;
  }
  /// Sum of squared entries.
  double squared_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return s;
  }
  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  Tensor4& operator+=(const Tensor4& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Tensor4& operator-=(const Tensor4& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
  friend Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
  friend bool operator==(const Tensor4&, const Tensor4&) = default;

 private:
  std::size_t index(int p, int q, int r, int s) const {
    const std::size_t n = static_cast<std::size_t>(n_);
    return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
  }

  int n_ = 0;
  std::vector<double> data_;
};

}  // namespace csa
