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

#include <random>

#include "../oracle.hpp"
#include "csa/errors.hpp"
#include "csa/pauli_text.hpp"

namespace {

TEST(PauliText, ParsesSingleTerm) {
  const auto s = csa::parse_pauli_sum("0.5 X0 Z1\n");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.n_qubits(), 2);
  EXPECT_DOUBLE_EQ(s.coefficient(csa::PauliProduct(2, 0b01, 0b10)), 0.5);
}

TEST(PauliText, EmptyLettersIsIdentityAndCommentsAreSkipped) {
  const auto s = csa::parse_pauli_sum("# some comment\n-1.25\n\n0.5 Y2\n");
  EXPECT_EQ(s.n_qubits(), 3);
  EXPECT_DOUBLE_EQ(s.coefficient(csa::PauliProduct::identity(3)), -1.25);
  EXPECT_DOUBLE_EQ(s.coefficient(csa::PauliProduct(3, 0b100, 0b100)), 0.5);
}

TEST(PauliText, HeaderFixesWidth) {
  const auto s = csa::parse_pauli_sum("# n_qubits = 6\n1 Z0\n");
  EXPECT_EQ(s.n_qubits(), 6);
  EXPECT_THROW(csa::parse_pauli_sum("# n_qubits = 2\n1 Z4\n"), csa::ParseError);
}

TEST(PauliText, UnknownLetterReportsLine) {
  try {
    csa::parse_pauli_sum("1 X0\n0.5 Q3\n");
    FAIL() << "expected ParseError";
  } catch (const csa::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(PauliText, MalformedInputs) {
  EXPECT_THROW(csa::parse_pauli_sum("abc X0\n"), csa::ParseError);
  EXPECT_THROW(csa::parse_pauli_sum("1.0 X\n"), csa::ParseError);
  EXPECT_THROW(csa::parse_pauli_sum("1.0 X-1\n"), csa::ParseError);
  EXPECT_THROW(csa::parse_pauli_sum("1.0 X0 Z0\n"), csa::ParseError);
  EXPECT_THROW(csa::parse_pauli_sum("1.0 X64\n"), csa::ParseError);
  EXPECT_THROW(csa::parse_pauli_sum("nan X0\n"), csa::ParseError);
}

TEST(PauliText, DuplicatesMerge) {
  const auto s = csa::parse_pauli_sum("0.5 X0\n0.25 X0\n");
  EXPECT_DOUBLE_EQ(s.coefficient(csa::PauliProduct(1, 1, 0)), 0.75);
}

TEST(PauliText, CanonicalRoundTripIsBitExact) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> nd;
  csa::PauliSum::TermMap m;
  for (int i = 0; i < 100; ++i) m[oracle::random_product(9, rng)] = nd(rng) / 3.0;
  const csa::PauliSum s(9, m);
  const std::string text = csa::format_pauli_sum(s);
  const auto back = csa::parse_pauli_sum(text);
  EXPECT_TRUE(back == s);
  EXPECT_EQ(csa::format_pauli_sum(back), text);
}

}  // namespace
