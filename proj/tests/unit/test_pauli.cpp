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

#include <algorithm>
#include <random>

#include "../oracle.hpp"
#include "csa/errors.hpp"
#include "csa/pauli.hpp"

namespace {

using csa::Phase;
using csa::PauliProduct;
using csa::PauliSum;
using csa::PauliTerm;

PauliProduct parse_product(int n, std::initializer_list<std::pair<int, char>> letters) {
  std::uint64_t x = 0, z = 0;
  for (auto [q, l] : letters) {
    const auto p = PauliProduct::single(n, q, l);
    x |= p.x_mask();
    z |= p.z_mask();
  }
  return PauliProduct(n, x, z);
}

TEST(PauliProduct, LettersFollowMaskConvention) {
  const PauliProduct p(3, 0b011, 0b110);
  EXPECT_EQ(p.letter(0), 'X');
  EXPECT_EQ(p.letter(1), 'Y');
  EXPECT_EQ(p.letter(2), 'Z');
  EXPECT_EQ(p.to_string(), "X0 Y1 Z2");
  EXPECT_EQ(p.weight(), 3);
  EXPECT_EQ(p.y_count(), 1);
  EXPECT_EQ(PauliProduct::identity(4).to_string(), "");
}

TEST(PauliProduct, RejectsMasksWiderThanRegister) {
  EXPECT_THROW(PauliProduct(2, 0b100, 0), csa::DimensionError);
  EXPECT_THROW(PauliProduct(0, 0, 0), csa::DimensionError);
  EXPECT_THROW(PauliProduct(65, 0, 0), csa::DimensionError);
  EXPECT_NO_THROW(PauliProduct(64, ~0ull, ~0ull));
}

TEST(Multiply, XTimesZIsMinusIY) {
  const auto r = csa::multiply(parse_product(1, {{0, 'X'}}), parse_product(1, {{0, 'Z'}}));
  EXPECT_EQ(r.phase, Phase::kMinusI);
  EXPECT_EQ(r.product, parse_product(1, {{0, 'Y'}}));
}

TEST(Multiply, ProductsAreInvolutory) {
  const auto p = parse_product(2, {{0, 'X'}, {1, 'Z'}});
  const auto r = csa::multiply(p, p);
  EXPECT_EQ(r.phase, Phase::kPlusOne);
  EXPECT_TRUE(r.product.is_identity());
}

TEST(Multiply, TwoQubitExampleMatchesDenseProduct) {
  const auto p = parse_product(2, {{0, 'X'}, {1, 'Y'}});
  const auto q = parse_product(2, {{0, 'Z'}, {1, 'Z'}});
  const auto r = csa::multiply(p, q);
  EXPECT_EQ(r.product, parse_product(2, {{0, 'Y'}, {1, 'X'}}));
  EXPECT_EQ(r.phase, Phase::kPlusOne);
  const oracle::MatC expect = oracle::dense(p) * oracle::dense(q);
  EXPECT_LT((csa::to_complex(r.phase) * oracle::dense(r.product) - expect).norm(), 1e-12);
}

TEST(Multiply, MismatchedWidthsThrow) {
  EXPECT_THROW(csa::multiply(PauliProduct(1, 1, 0), PauliProduct(2, 1, 0)), csa::DimensionError);
  EXPECT_THROW(csa::commutes(PauliProduct(1, 1, 0), PauliProduct(2, 1, 0)), csa::DimensionError);
  EXPECT_THROW(csa::qubitwise_commutes(PauliProduct(1, 1, 0), PauliProduct(2, 1, 0)), csa::DimensionError);
}

TEST(Multiply, RandomProductsMatchDenseOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const auto p = oracle::random_product(n, rng);
    const auto q = oracle::random_product(n, rng);
    const auto r = csa::multiply(p, q);
    EXPECT_EQ(r.product.x_mask(), p.x_mask() ^ q.x_mask());
    EXPECT_EQ(r.product.z_mask(), p.z_mask() ^ q.z_mask());
    const oracle::MatC lhs = csa::to_complex(r.phase) * oracle::dense(r.product);
    ASSERT_LT((lhs - oracle::dense(p) * oracle::dense(q)).norm(), 1e-12);
    // Multiplying by p again recovers q up to phase.
    EXPECT_EQ(csa::multiply(p, r.product).product, q);
  }
}

TEST(Multiply, AssociativeIncludingPhase) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = oracle::random_product(5, rng);
    const auto q = oracle::random_product(5, rng);
    const auto r = oracle::random_product(5, rng);
    const auto pq = csa::multiply(p, q);
    const auto pq_r = csa::multiply(pq.product, r);
    const auto qr = csa::multiply(q, r);
    const auto p_qr = csa::multiply(p, qr.product);
    EXPECT_EQ(pq_r.product, p_qr.product);
    EXPECT_EQ(pq.phase * pq_r.phase, qr.phase * p_qr.phase);
  }
}

TEST(Commutes, Examples) {
  EXPECT_FALSE(csa::commutes(parse_product(1, {{0, 'X'}}), parse_product(1, {{0, 'Z'}})));
  EXPECT_TRUE(csa::commutes(parse_product(2, {{0, 'X'}, {1, 'Z'}}), parse_product(2, {{0, 'Z'}, {1, 'X'}})));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto p = oracle::random_product(6, rng);
    EXPECT_TRUE(csa::commutes(p, p));
  }
}

TEST(QubitwiseCommutes, Examples) {
  EXPECT_TRUE(csa::qubitwise_commutes(parse_product(2, {{0, 'X'}, {1, 'X'}}), parse_product(2, {{0, 'X'}})));
  EXPECT_TRUE(csa::qubitwise_commutes(parse_product(2, {{0, 'Z'}}), parse_product(2, {{1, 'Z'}})));
  EXPECT_FALSE(
      csa::qubitwise_commutes(parse_product(2, {{0, 'X'}, {1, 'Z'}}), parse_product(2, {{0, 'Z'}, {1, 'X'}})));
}

TEST(Commutes, AgreesWithDenseCommutatorAndContainsQwc) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const auto p = oracle::random_product(n, rng);
    const auto q = oracle::random_product(n, rng);
    const oracle::MatC a = oracle::dense(p), b = oracle::dense(q);
    const bool dense_commute = (a * b - b * a).norm() < 1e-12;
    ASSERT_EQ(csa::commutes(p, q), dense_commute);
    if (csa::qubitwise_commutes(p, q)) ASSERT_TRUE(csa::commutes(p, q));
  }
}

TEST(Accumulate, MergesAndCancels) {
  const auto x0 = parse_product(1, {{0, 'X'}});
  std::vector<PauliTerm> twice{{0.5, Phase::kPlusOne, x0}, {0.5, Phase::kPlusOne, x0}};
  const auto s = csa::accumulate(1, twice);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_DOUBLE_EQ(s.coefficient(x0), 1.0);

  std::vector<PauliTerm> cancel{{1.0, Phase::kPlusOne, x0}, {-1.0, Phase::kPlusOne, x0}};
  EXPECT_TRUE(csa::accumulate(1, cancel).empty());
}

TEST(Accumulate, PhasesFoldIntoSign) {
  const auto y0 = parse_product(1, {{0, 'Y'}});
  std::vector<PauliTerm> t{{2.0, Phase::kMinusOne, y0}};
  EXPECT_DOUBLE_EQ(csa::accumulate(1, t).coefficient(y0), -2.0);
}

TEST(Accumulate, ImaginaryRemainderIsNonHermitian) {
  const auto x0 = parse_product(1, {{0, 'X'}});
  std::vector<PauliTerm> t{{1.0, Phase::kPlusI, x0}};
  EXPECT_THROW(csa::accumulate(1, t), csa::NonHermitianError);
  std::vector<PauliTerm> cancelled{{1.0, Phase::kPlusI, x0}, {1.0, Phase::kMinusI, x0}};
  EXPECT_TRUE(csa::accumulate(1, cancelled).empty());
}

TEST(Accumulate, OrderIndependent) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<PauliTerm> terms;
  for (int i = 0; i < 200; ++i) {
    terms.push_back({u(rng), (rng() & 1) ? Phase::kPlusOne : Phase::kMinusOne, oracle::random_product(3, rng)});
  }
  const auto ref = csa::accumulate(3, terms);
  for (int k = 0; k < 20; ++k) {
    std::shuffle(terms.begin(), terms.end(), rng);
    ASSERT_TRUE(csa::accumulate(3, terms) == ref);
  }
}

TEST(PauliSum, DropsSmallCoefficientsAndScales) {
  PauliSum::TermMap m{{PauliProduct(2, 1, 0), 1e-12}, {PauliProduct(2, 0, 2), 0.25}};
  const PauliSum s(2, m);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_DOUBLE_EQ(s.one_norm(), 0.25);
  EXPECT_DOUBLE_EQ(s.scaled(-2.0).coefficient(PauliProduct(2, 0, 2)), -0.5);
  EXPECT_FALSE(s.contains(PauliProduct(2, 1, 0)));
}

TEST(PauliSum, SymbolicCommutator) {
  PauliSum a(2, {{parse_product(2, {{0, 'Z'}, {1, 'Z'}}), 1.0}});
  PauliSum b(2, {{parse_product(2, {{0, 'X'}, {1, 'X'}}), 0.5}, {parse_product(2, {{0, 'Y'}, {1, 'Y'}}), 0.5}});
  PauliSum c(2, {{parse_product(2, {{0, 'X'}}), 1.0}});
  EXPECT_TRUE(csa::sums_commute(a, b));
  EXPECT_FALSE(csa::sums_commute(a, c));
}

}  // namespace
