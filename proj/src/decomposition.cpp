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

#include "csa/decomposition.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "csa/errors.hpp"
#include "csa/fock_sector.hpp"
#include "optimizer.hpp"

namespace csa {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_pair_symmetry(const Tensor4& g) {
  const int n = g.n();
  if (n < 1) throw DimensionError("empty two-body tensor");
  const auto m = g.supermatrix();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw ValidationError("two-body tensor violates g_pqrs = g_rspq");
  }
}

/// Deterministic generator for one (seed, a, b) triple.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

/// Random angles; lambda projected from `target` onto the unrotated
/// fragment form, i.e. lambda_tu = target_tt,uu.
std::vector<double> initial_point(int n, std::mt19937_64& rng, double range, const RowMajorMatrix& target) {
  std::uniform_real_distribution<double> u(-range, range);
  std::vector<double> x(static_cast<std::size_t>(parameter_count(n)), 0.0);
  const auto s = detail::fragment_state(n, x.data());
  const Eigen::MatrixXd lam = detail::project_lambda(s.coeffs, target);
  const int nl = n * (n + 1) / 2;
  for (int k = nl; k < parameter_count(n); ++k) x[k] = u(rng);
  int k = 0;
  for (int t = 0; t < n; ++t) {
    for (int v = t; v < n; ++v) x[k++] = lam(t, v);
  }
  return x;
}

Tensor4 residual_of(const Tensor4& g, const std::vector<Fragment>& fragments) {
  Tensor4 r = g;
  for (const auto& f : fragments) r -= fragment_tensor(f);
  return r;
}

}  // namespace

std::string to_string(DecompositionMethod m) {
  switch (m) {
    case DecompositionMethod::kSvd: return "svd";
    case DecompositionMethod::kFro: return "fro";
    case DecompositionMethod::kGfro: return "gfro";
    case DecompositionMethod::kVgfro: return "vgfro";
  }
  return "unknown";
}

DecompositionResult svd_factorize(const Tensor4& g, double norm_tol) {
  const auto t0 = Clock::now();
  check_pair_symmetry(g);
  const int n = g.n();
  const Eigen::MatrixXd sm = g.supermatrix();
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      for (int rs = 0; rs < n * n; ++rs) {
        if (std::abs(sm(p * n + q, rs) - sm(q * n + p, rs)) > 1e-10) {
          throw ValidationError("two-body tensor lacks the real-orbital symmetry g_pqrs = g_qprs");
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sm);
  const Eigen::VectorXd lam = es.eigenvalues();
  std::vector<int> order(static_cast<std::size_t>(n * n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(lam(a)) > std::abs(lam(b)); });

  DecompositionResult res;
  res.method = DecompositionMethod::kSvd;
  res.mode = "eigendecomposition";
  res.residual_tensor = g;
  res.residual_norm1 = g.norm1();
  for (int k : order) {
    if (res.residual_norm1 <= norm_tol) break;
    Eigen::MatrixXd l(n, n);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) l(p, q) = es.eigenvectors()(p * n + q, k);
    }
    l = 0.5 * (l + l.transpose());
    const auto ob = one_body_fragment(l);
    SvdFragment f{lam(k), ob.eigenvalues, ob.rotation};
    res.residual_tensor -= fragment_tensor(f);
    res.residual_norm1 = res.residual_tensor.norm1();
    res.residual_trace.push_back(res.residual_norm1);
    res.fragments.emplace_back(std::move(f));
  }
  res.converged = res.residual_norm1 <= norm_tol;
  res.wall_seconds = seconds_since(t0);
  if (!res.converged) {
    throw DecompositionError("eigendecomposition leaves residual 1-norm " + std::to_string(res.residual_norm1) +
                             " above tolerance");
  }
  return res;
}

DecompositionResult svd_factorize(const IntegralTensors& t, double norm_tol) {
  t.validate();
  return svd_factorize(t.g, norm_tol);
}

DecompositionResult fro(const Tensor4& g, int m, double norm_tol, const FroOptions& options) {
  const auto t0 = Clock::now();
  if (m < 1) throw ValidationError("fragment count must be positive");
  check_pair_symmetry(g);
  const int n = g.n();
  const int np = parameter_count(n);
  const RowMajorMatrix target = g.supermatrix();
  const double scale = 1.0 / std::max(target.squaredNorm(), 1e-300);

  const detail::CostFunction cost = [&](const double* x, double* grad) {
    std::vector<detail::FragmentState> states;
    RowMajorMatrix f = RowMajorMatrix::Zero(n * n, n * n);
    for (int a = 0; a < m; ++a) {
      states.push_back(detail::fragment_state(n, x + a * np));
      detail::add_supermatrix(states.back(), f);
    }
    const RowMajorMatrix diff = target - f;
    if (grad != nullptr) {
      const RowMajorMatrix gf = -2.0 * scale * diff;
      for (int a = 0; a < m; ++a) detail::backprop(states[a], gf, grad + a * np);
    }
    return scale * diff.squaredNorm();
  };

  DecompositionResult best;
  best.residual_norm1 = std::numeric_limits<double>::infinity();
  int total_iterations = 0;
  const int restarts = std::max(1, options.restarts);
  for (int r = 0; r < restarts; ++r) {
    auto rng = make_rng(options.seed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(r));
    std::vector<double> x;
    RowMajorMatrix remaining = target;
    for (int a = 0; a < m; ++a) {
      const auto xa = initial_point(n, rng, options.optimizer.angle_range, remaining);
      const auto s = detail::fragment_state(n, xa.data());
      RowMajorMatrix fa = RowMajorMatrix::Zero(n * n, n * n);
      detail::add_supermatrix(s, fa);
      remaining -= fa;
      x.insert(x.end(), xa.begin(), xa.end());
    }
    const auto mr = detail::minimize(cost, x, options.optimizer);
    total_iterations += mr.iterations;

    std::vector<Fragment> frags;
    for (int a = 0; a < m; ++a) frags.emplace_back(unpack(n, x.data() + a * np));
    Tensor4 resid = residual_of(g, frags);
    const double r1 = resid.norm1();
    if (r1 < best.residual_norm1) {
      best.fragments = std::move(frags);
      best.residual_tensor = std::move(resid);
      best.residual_norm1 = r1;
      best.restart = r;
    }
    if (best.residual_norm1 <= norm_tol) break;
  }
  best.method = DecompositionMethod::kFro;
  best.mode = "fixed-M";
  best.seed = options.seed;
  best.residual_trace = {best.residual_norm1};
  best.iterations = {total_iterations};
  best.converged = best.residual_norm1 <= norm_tol;
  best.wall_seconds = seconds_since(t0);
  return best;
}

DecompositionResult fro(const IntegralTensors& t, int m, double norm_tol, const FroOptions& options) {
  t.validate();
  return fro(t.g, m, norm_tol, options);
}

DecompositionResult fro_minimal(const Tensor4& g, double norm_tol, const FroOptions& options) {
  const auto t0 = Clock::now();
  check_pair_symmetry(g);
  const int n = g.n();
  const int cap = options.max_fragments > 0 ? options.max_fragments : n * (n + 1) / 2;
  std::vector<double> trace;
  std::vector<int> iterations;
  double best = g.norm1();
  if (best <= norm_tol) {
    DecompositionResult res;
    res.method = DecompositionMethod::kFro;
    res.mode = "minimal-M";
    res.residual_tensor = g;
    res.residual_norm1 = best;
    res.seed = options.seed;
    res.converged = true;
    return res;
  }
  for (int m = 1; m <= cap; ++m) {
    auto res = fro(g, m, norm_tol, options);
    trace.push_back(res.residual_norm1);
    iterations.push_back(res.iterations.front());
    best = std::min(best, res.residual_norm1);
    if (res.converged) {
      res.mode = "minimal-M";
      res.residual_trace = std::move(trace);
      res.iterations = std::move(iterations);
      res.wall_seconds = seconds_since(t0);
      return res;
    }
  }
  throw ConvergenceError("FRO did not reach the residual tolerance within " + std::to_string(cap) + " fragments",
                         best);
}

DecompositionResult fro_minimal(const IntegralTensors& t, double norm_tol, const FroOptions& options) {
  t.validate();
  return fro_minimal(t.g, norm_tol, options);
}

namespace {

DecompositionResult greedy(const Tensor4& g, double norm_tol, double w, int mu,
                           const FragmentVarianceEvaluator* reference, const GreedyOptions& options,
                           DecompositionMethod method) {
  const auto t0 = Clock::now();
  check_pair_symmetry(g);
  const int n = g.n();
  const int cap = options.max_fragments > 0 ? options.max_fragments : 20 * n * n;

  DecompositionResult res;
  res.method = method;
  res.mode = "greedy";
  res.seed = options.seed;
  res.residual_tensor = g;
  res.residual_norm1 = g.norm1();

  for (int alpha = 0; res.residual_norm1 > norm_tol; ++alpha) {
    if (alpha >= cap) {
      throw ConvergenceError("greedy decomposition did not reach the residual tolerance within " +
                                 std::to_string(cap) + " fragments",
                             res.residual_norm1);
    }
    const RowMajorMatrix target = res.residual_tensor.supermatrix();
    const double weight = (reference != nullptr && alpha < mu) ? w : 0.0;
    // Scaled by the target size so the gradient tolerance acts relatively.
    const double scale = 1.0 / std::max(target.squaredNorm(), 1e-300);
    const detail::CostFunction cost = [&](const double* x, double* grad) {
      const auto s = detail::fragment_state(n, x);
      Tensor4 f(n);
      detail::add_supermatrix(s, f.supermatrix());
      const RowMajorMatrix diff = target - f.supermatrix();
      double value = diff.squaredNorm();
      RowMajorMatrix gf;
      if (grad != nullptr) gf = -2.0 * diff;
      if (weight != 0.0) {
        Tensor4 gv;
        value += weight * reference->variance_with_gradient(f, grad != nullptr ? &gv : nullptr);
        if (grad != nullptr) gf += weight * gv.supermatrix();
      }
      if (grad != nullptr) {
        gf *= scale;
        detail::backprop(s, gf, grad);
      }
      return scale * value;
    };
    auto rng = make_rng(options.seed, static_cast<std::uint64_t>(alpha), 0);
    std::vector<double> x = initial_point(n, rng, options.optimizer.angle_range, target);
    const auto mr = detail::minimize(cost, x, options.optimizer);

    CsaFragment frag = unpack(n, x.data());
    res.residual_tensor -= fragment_tensor(frag);
    res.residual_norm1 = res.residual_tensor.norm1();
    res.residual_trace.push_back(res.residual_norm1);
    res.iterations.push_back(mr.iterations);
    res.fragments.emplace_back(std::move(frag));
  }
  res.converged = true;
  res.wall_seconds = seconds_since(t0);
  return res;
}

}  // namespace

DecompositionResult gfro(const Tensor4& g, double norm_tol, const GreedyOptions& options) {
  return greedy(g, norm_tol, 0.0, 0, nullptr, options, DecompositionMethod::kGfro);
}

DecompositionResult gfro(const IntegralTensors& t, double norm_tol, const GreedyOptions& options) {
  t.validate();
  return gfro(t.g, norm_tol, options);
}

DecompositionResult vgfro(const Tensor4& g, double norm_tol, double w, int mu,
                          const FragmentVarianceEvaluator& reference, const GreedyOptions& options) {
  if (mu < 0) throw ValidationError("mu must be non-negative");
  return greedy(g, norm_tol, w, mu, &reference, options, DecompositionMethod::kVgfro);
}

DecompositionResult vgfro(const IntegralTensors& t, double norm_tol, double w, int mu,
                          const Wavefunction& reference, Mapping mapping, const GreedyOptions& options) {
  t.validate();
  const auto eval = FragmentVarianceEvaluator::from_wavefunction(reference, t.n_spatial, mapping);
  return vgfro(t.g, norm_tol, w, mu, eval, options);
}

}  // namespace csa
