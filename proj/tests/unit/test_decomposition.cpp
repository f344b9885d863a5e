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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "../oracle.hpp"
#include "csa/decomposition.hpp"
#include "csa/errors.hpp"
#include "csa/fermion.hpp"
#include "csa/fock_sector.hpp"
#include "csa/io.hpp"
#include "csa/statevec.hpp"

#ifndef CSA_DATA_DIR
#define CSA_DATA_DIR "data"
#endif

namespace {

using Eigen::MatrixXd;

csa::CsaFragment random_fragment(int n, double angle_range, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(-angle_range, angle_range), l(-1, 1);
  csa::CsaFragment f{csa::OrbitalRotation::identity(n), MatrixXd::Zero(n, n)};
  for (auto& x : f.rotation.angles) x = a(rng);
  for (int t = 0; t < n; ++t)
    for (int u = t; u < n; ++u) f.lambda(t, u) = f.lambda(u, t) = l(rng);
  return f;
}

double objective(const csa::CsaFragment& f, const csa::Tensor4& residual) {
  return (residual - csa::fragment_tensor(f)).squared_norm();
}

void expect_residual_consistent(const csa::DecompositionResult& r, const csa::Tensor4& g) {
  csa::Tensor4 sum(g.n());
  for (std::size_t i = 0; i < r.fragments.size(); ++i) sum += r.fragment_tensor(i);
  EXPECT_LT((g - sum - r.residual_tensor).max_abs(), 1e-12);
  EXPECT_NEAR(r.residual_norm1, r.residual_tensor.norm1(), 1e-12);
}

csa::IntegralTensors h2() { return csa::parse_integrals(CSA_DATA_DIR "/h2_sto3g.json"); }

TEST(Rotation, ClosedForms) {
  EXPECT_TRUE(csa::rotation_matrix(csa::OrbitalRotation::identity(4)).isIdentity(0.0));
  const double th = 0.37;
  const MatrixXd o = csa::rotation_matrix({2, {th}});
  MatrixXd want(2, 2);
  want << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
  EXPECT_LT((o - want).norm(), 1e-14);
}

TEST(Rotation, OrthogonalWithUnitDeterminant) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_fragment(5, 3.0, rng);
    const MatrixXd o = csa::rotation_matrix(f.rotation);
    EXPECT_LT((o.transpose() * o - MatrixXd::Identity(5, 5)).norm(), 1e-12);
    EXPECT_NEAR(o.determinant(), 1.0, 1e-12);
  }
  EXPECT_THROW(csa::rotation_matrix({3, {0.1}}), csa::DimensionError);
}

TEST(FragmentTensor, IdentityRotationIsDiagonal) {
  std::mt19937_64 rng(2);
  auto f = random_fragment(3, 0.0, rng);
  const auto t = csa::fragment_tensor(f);
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q)
      for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s)
          EXPECT_EQ(t(p, q, r, s), (p == q && r == s) ? f.lambda(p, r) : 0.0);
}

TEST(FragmentTensor, PairSymmetry) {
  std::mt19937_64 rng(3);
  const auto t = csa::fragment_tensor(random_fragment(4, 2.0, rng));
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) EXPECT_EQ(t(p, q, r, s), t(r, s, p, q));
}

TEST(FragmentTensor, MatchesFockSpaceConjugation) {
  // V = exp(sum_pq A_qp E_pq) carries n_t to sum_pq O_tp O_tq E_pq.
  std::mt19937_64 rng(4);
  const int n = 2;
  const auto e = oracle::excitation_ops(n);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_fragment(n, 2.0, rng);
    const MatrixXd a = csa::rotation_generator(f.rotation);
    MatrixXd k = MatrixXd::Zero(e[0].rows(), e[0].cols());
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) k += a(q, p) * e[p * n + q];
    const MatrixXd v = k.exp();
    MatrixXd diag = MatrixXd::Zero(k.rows(), k.cols());
    for (int t = 0; t < n; ++t)
      for (int u = 0; u < n; ++u) diag += f.lambda(t, u) * e[t * n + t] * e[u * n + u];
    const MatrixXd want = v * diag * v.transpose();
    const MatrixXd got = oracle::dense_two_body(csa::fragment_tensor(f), e);
    EXPECT_LT((got - want).norm(), 1e-11);
  }
}

TEST(AnalyticGradient, MatchesCentralDifferences) {
  std::mt19937_64 rng(5);
  const int n = 3;
  for (int trial = 0; trial < 3; ++trial) {
    const auto f = random_fragment(n, 1.0, rng);
    const auto target = oracle::random_integrals(n, 2, rng).g;
    const auto grad = csa::analytic_gradient(f, target);
    const auto x = csa::pack(f);
    ASSERT_EQ(grad.size(), x.size());
    ASSERT_EQ(static_cast<int>(x.size()), csa::parameter_count(n));
    const double h = 1e-5;
    for (std::size_t i = 0; i < x.size(); ++i) {
      auto xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const double fd = (objective(csa::unpack(n, xp.data()), target) - objective(csa::unpack(n, xm.data()), target)) / (2 * h);
      EXPECT_NEAR(grad[i], fd, 1e-6 * std::max(1.0, std::abs(fd))) << "parameter " << i;
    }
  }
}

TEST(AnalyticGradient, VanishesAtExactFit) {
  std::mt19937_64 rng(6);
  const auto f = random_fragment(3, 1.0, rng);
  const auto grad = csa::analytic_gradient(f, csa::fragment_tensor(f));
  double norm = 0.0;
  for (double g : grad) norm += g * g;
  EXPECT_LT(std::sqrt(norm), 1e-10);
}

TEST(PackUnpack, RoundTrip) {
  std::mt19937_64 rng(7);
  const auto f = random_fragment(4, 1.0, rng);
  const auto x = csa::pack(f);
  const auto g = csa::unpack(4, x.data());
  EXPECT_EQ(g.rotation.angles, f.rotation.angles);
  EXPECT_TRUE(g.lambda == f.lambda);
}

TEST(Svd, RankOneDiagonal) {
  const int n = 3;
  csa::Tensor4 g(n);
  const double l[] = {0.5, -0.2, 0.3};
  for (int p = 0; p < n; ++p)
    for (int r = 0; r < n; ++r) g(p, p, r, r) = l[p] * l[r];
  const auto res = csa::svd_factorize(g, 1e-10);
  EXPECT_EQ(res.fragments.size(), 1u);
  EXPECT_LT(res.residual_norm1, 1e-12);
  expect_residual_consistent(res, g);
}

TEST(Svd, H2GivesThreeFragments) {
  const auto t = h2();
  const auto res = csa::svd_factorize(t, 1e-5);
  EXPECT_EQ(res.fragments.size(), 3u);
  EXPECT_LE(res.residual_norm1, 1e-5);
  expect_residual_consistent(res, t.g);
  for (std::size_t i = 1; i < res.residual_trace.size(); ++i)
    EXPECT_LE(res.residual_trace[i], res.residual_trace[i - 1] + 1e-12);
}

TEST(Svd, FragmentOperatorsCommute) {
  std::mt19937_64 rng(8);
  const int n = 4;
  const auto t = oracle::random_integrals(n, 4, rng);
  const auto res = csa::svd_factorize(t, 1e-8);
  expect_residual_consistent(res, t.g);
  const auto e = oracle::excitation_ops(n);
  for (const auto& frag : res.fragments) {
    const auto& s = std::get<csa::SvdFragment>(frag);
    EXPECT_LT((s.transform.transpose() * s.transform - MatrixXd::Identity(n, n)).norm(), 1e-12);
    std::vector<MatrixXd> b;
    for (int k = 0; k < n; ++k) {
      MatrixXd bk = MatrixXd::Zero(e[0].rows(), e[0].cols());
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) bk += s.transform(p, k) * s.transform(q, k) * e[p * n + q];
      b.push_back(bk);
    }
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) EXPECT_LT((b[x] * b[y] - b[y] * b[x]).norm(), 1e-10);
  }
}

TEST(Svd, RotatedFormReproducesTensor) {
  std::mt19937_64 rng(9);
  const int n = 3;
  const auto res = csa::svd_factorize(oracle::random_integrals(n, 2, rng).g, 1e-8);
  for (const auto& frag : res.fragments) {
    const auto rf = csa::rotated_form(frag);
    const auto want = csa::fragment_tensor(frag);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s) {
            double v = 0.0;
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b)
                v += rf.lambda(a, b) * rf.rotation(a, p) * rf.rotation(a, q) * rf.rotation(b, r) * rf.rotation(b, s);
            EXPECT_NEAR(v, want(p, q, r, s), 1e-12);
          }
  }
}

TEST(Svd, RejectsTwoFoldTensor) {
  csa::Tensor4 g(2);
  g(0, 1, 0, 0) = g(0, 0, 0, 1) = 1.0;
  EXPECT_THROW(csa::svd_factorize(g, 1e-6), csa::ValidationError);
}

TEST(Fro, SingleFragmentRoundTrip) {
  std::mt19937_64 rng(10);
  const auto truth = random_fragment(3, 0.3, rng);
  const auto g = csa::fragment_tensor(truth);
  const auto res = csa::fro(g, 1, 1e-5);
  EXPECT_TRUE(res.converged);
  EXPECT_LE(res.residual_norm1, 1e-5);
  expect_residual_consistent(res, g);
  EXPECT_LT((csa::fragment_tensor(res.fragments[0]) - g).max_abs(), 1e-6);
}

TEST(Fro, H2MinimalCount) {
  const auto res = csa::fro_minimal(h2(), 1e-5);
  EXPECT_EQ(res.mode, "minimal-M");
  EXPECT_EQ(res.fragments.size(), 2u);
  EXPECT_LE(res.residual_norm1, 1e-5);
}

TEST(Fro, SameSeedSameResult) {
  csa::FroOptions o;
  o.seed = 3;
  const auto a = csa::fro(h2(), 2, 1e-5, o);
  const auto b = csa::fro(h2(), 2, 1e-5, o);
  EXPECT_TRUE(a.residual_tensor == b.residual_tensor);
}

TEST(Gfro, SingleFragmentRoundTrip) {
  std::mt19937_64 rng(11);
  const auto truth = random_fragment(3, 0.3, rng);
  const auto g = csa::fragment_tensor(truth);
  const auto res = csa::gfro(g, 1e-5);
  EXPECT_EQ(res.fragments.size(), 1u);
  EXPECT_LE(res.residual_norm1, 1e-5);
}

TEST(Gfro, H2AndResidualTrace) {
  const auto t = h2();
  const auto res = csa::gfro(t, 1e-5);
  EXPECT_EQ(res.fragments.size(), 2u);
  expect_residual_consistent(res, t.g);
  for (std::size_t i = 1; i < res.residual_trace.size(); ++i)
    EXPECT_LE(res.residual_trace[i], res.residual_trace[i - 1] + 1e-12);
}

TEST(Gfro, ResidualTraceNonIncreasingOnRandomTensor) {
  std::mt19937_64 rng(12);
  const auto res = csa::gfro(oracle::random_integrals(3, 2, rng).g, 1e-4);
  EXPECT_LE(res.residual_norm1, 1e-4);
  for (std::size_t i = 1; i < res.residual_trace.size(); ++i)
    EXPECT_LE(res.residual_trace[i], res.residual_trace[i - 1] + 1e-12);
  for (const auto& frag : res.fragments) {
    // The fragment is diagonal in its own rotated orbitals.
    const auto& c = std::get<csa::CsaFragment>(frag);
    const MatrixXd o = csa::rotation_matrix(c.rotation);
    const auto t = csa::fragment_tensor(c);
    const int n = c.n();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) {
            double v = 0.0;
            for (int p = 0; p < n; ++p)
              for (int q = 0; q < n; ++q)
                for (int r = 0; r < n; ++r)
                  for (int s = 0; s < n; ++s) v += o(a, p) * o(b, q) * o(x, r) * o(y, s) * t(p, q, r, s);
            EXPECT_NEAR(v, (a == b && x == y) ? c.lambda(a, x) : 0.0, 1e-10);
          }
  }
}

TEST(Vgfro, ZeroWeightEqualsGfro) {
  const auto t = h2();
  const auto ref = csa::hf_state(4, 2, csa::Mapping::kBravyiKitaev);
  const auto a = csa::gfro(t, 1e-5);
  const auto b = csa::vgfro(t, 1e-5, 0.0, 5, ref, csa::Mapping::kBravyiKitaev);
  ASSERT_EQ(a.fragments.size(), b.fragments.size());
  EXPECT_TRUE(a.residual_tensor == b.residual_tensor);
}

TEST(Vgfro, H2WithVariancePenalty) {
  const auto t = h2();
  const auto ref = csa::hf_state(4, 2, csa::Mapping::kBravyiKitaev);
  const auto res = csa::vgfro(t, 1e-5, 0.5, 1, ref, csa::Mapping::kBravyiKitaev);
  EXPECT_EQ(res.fragments.size(), 3u);
  EXPECT_LE(res.residual_norm1, 1e-5);
  expect_residual_consistent(res, t.g);
}

}  // namespace
