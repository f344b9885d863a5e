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

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "csa/decomposition.hpp"
#include "csa/tensor.hpp"

namespace csa::detail {

/// One fragment's intermediates at a parameter vector.
struct FragmentState {
  int n = 0;
  Eigen::MatrixXd generator;  // A
  Eigen::MatrixXd rotation;   // O = exp(A)
  Eigen::MatrixXd coeffs;     // C, n x n^2, C(t, p n + q) = O_tp O_tq
  Eigen::MatrixXd lambda;
};

FragmentState fragment_state(int n, const double* params);
Eigen::MatrixXd coefficient_matrix(const Eigen::MatrixXd& rotation);

/// f += C^T Lambda C.
void add_supermatrix(const FragmentState& s, Eigen::Ref<RowMajorMatrix> f);

/// Writes dL/dparams given gf = dL/df (supermatrix layout).
void backprop(const FragmentState& s, const RowMajorMatrix& gf, double* grad);

/// Adjoint of the Frechet derivative of exp at a, applied to gbar.
Eigen::MatrixXd exp_adjoint(const Eigen::MatrixXd& a, const Eigen::MatrixXd& gbar);

/// Lambda maximizing overlap with `target` at a fixed rotation: C T C^T.
Eigen::MatrixXd project_lambda(const Eigen::MatrixXd& coeffs, const RowMajorMatrix& target);

struct MinimizeResult {
  double cost = 0.0;
  int iterations = 0;
  bool usable = true;
  std::string message;
};

/// cost(x, grad) returns the objective and fills grad when non-null.
using CostFunction = std::function<double(const double* x, double* grad)>;

/// BFGS line-search minimization in place.
MinimizeResult minimize(const CostFunction& cost, std::vector<double>& x, const OptimizerOptions& options);

}  // namespace csa::detail
