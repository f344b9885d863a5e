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

#include "optimizer.hpp"

#include <ceres/ceres.h>
#include <glog/logging.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "csa/errors.hpp"

namespace csa::detail {

Eigen::MatrixXd coefficient_matrix(const Eigen::MatrixXd& o) {
  const int n = static_cast<int>(o.rows());
  Eigen::MatrixXd c(n, n * n);
  for (int t = 0; t < n; ++t) {
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) c(t, p * n + q) = o(t, p) * o(t, q);
    }
  }
  return c;
}

FragmentState fragment_state(int n, const double* params) {
  FragmentState s;
  s.n = n;
  s.lambda.resize(n, n);
  int k = 0;
  for (int t = 0; t < n; ++t) {
    for (int u = t; u < n; ++u) s.lambda(t, u) = s.lambda(u, t) = params[k++];
  }
  s.generator = Eigen::MatrixXd::Zero(n, n);
  for (int t = 1; t < n; ++t) {
    for (int u = 0; u < t; ++u) {
      s.generator(u, t) = params[k];
      s.generator(t, u) = -params[k];
      ++k;
    }
  }
  s.rotation = s.generator.exp();
  s.coeffs = coefficient_matrix(s.rotation);
  return s;
}

void add_supermatrix(const FragmentState& s, Eigen::Ref<RowMajorMatrix> f) {
  f.noalias() += s.coeffs.transpose() * (s.lambda * s.coeffs);
}

Eigen::MatrixXd exp_adjoint(const Eigen::MatrixXd& a, const Eigen::MatrixXd& gbar) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  big.topLeftCorner(n, n) = a.transpose();
  big.bottomRightCorner(n, n) = a.transpose();
  big.topRightCorner(n, n) = gbar;
  const Eigen::MatrixXd e = big.exp();
  return e.topRightCorner(n, n);
}

void backprop(const FragmentState& s, const RowMajorMatrix& gf, double* grad) {
  const int n = s.n;
  const Eigen::MatrixXd dlambda = s.coeffs * gf * s.coeffs.transpose();
  int k = 0;
  for (int t = 0; t < n; ++t) {
    grad[k++] = dlambda(t, t);
    for (int u = t + 1; u < n; ++u) grad[k++] = dlambda(t, u) + dlambda(u, t);
  }
  if (n < 2) return;
  const Eigen::MatrixXd dc = s.lambda * s.coeffs * (gf + gf.transpose());
  Eigen::MatrixXd dO = Eigen::MatrixXd::Zero(n, n);
  for (int t = 0; t < n; ++t) {
    for (int p = 0; p < n; ++p) {
      double acc = 0.0;
      for (int q = 0; q < n; ++q) acc += (dc(t, p * n + q) + dc(t, q * n + p)) * s.rotation(t, q);
      dO(t, p) = acc;
    }
  }
  const Eigen::MatrixXd da = exp_adjoint(s.generator, dO);
  for (int t = 1; t < n; ++t) {
    for (int u = 0; u < t; ++u) grad[k++] = da(u, t) - da(t, u);
  }
}

Eigen::MatrixXd project_lambda(const Eigen::MatrixXd& coeffs, const RowMajorMatrix& target) {
  const Eigen::MatrixXd l = coeffs * target * coeffs.transpose();
  return 0.5 * (l + l.transpose());
}

namespace {

class Adapter final : public ceres::FirstOrderFunction {
 public:
  Adapter(const CostFunction& cost, int n) : cost_(cost), n_(n) {}
  bool Evaluate(const double* parameters, double* cost, double* gradient) const override {
    *cost = cost_(parameters, gradient);
    return std::isfinite(*cost);
  }
  int NumParameters() const override { return n_; }

 private:
  const CostFunction& cost_;
  int n_;
};

}  // namespace

MinimizeResult minimize(const CostFunction& cost, std::vector<double>& x, const OptimizerOptions& options) {
  // BFGS update warnings near convergence are expected; only errors go to stderr.
  static const bool quiet = [] {
    if (FLAGS_minloglevel < google::GLOG_ERROR) FLAGS_minloglevel = google::GLOG_ERROR;
    return true;
  }();
  (void)quiet;
  ceres::GradientProblem problem(new Adapter(cost, static_cast<int>(x.size())));
  ceres::GradientProblemSolver::Options o;
  o.line_search_direction_type = ceres::BFGS;
  o.max_num_iterations = options.max_iterations;
  o.gradient_tolerance = options.gradient_tolerance;
  o.function_tolerance = options.function_tolerance;
  o.parameter_tolerance = options.parameter_tolerance;
  o.logging_type = ceres::SILENT;
  o.minimizer_progress_to_stdout = false;
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(o, problem, x.data(), &summary);
  MinimizeResult r;
  r.cost = summary.final_cost;
  r.iterations = static_cast<int>(summary.iterations.size());
  r.usable = summary.IsSolutionUsable();
  r.message = summary.message;
  return r;
}

}  // namespace csa::detail
