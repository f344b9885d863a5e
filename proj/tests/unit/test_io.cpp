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
#include <string>

#include <json.hpp>

#include "../oracle.hpp"
#include "csa/errors.hpp"
#include "csa/io.hpp"
#include "csa/pauli_text.hpp"
#include "csa/statevec.hpp"

#ifndef CSA_DATA_DIR
#define CSA_DATA_DIR "data"
#endif

namespace {

TEST(Integrals, FixtureMetadata) {
  const struct {
    const char* name;
    int n;
    int ne;
  } cases[] = {{"h2", 2, 2}, {"lih", 6, 4}, {"beh2", 7, 6}, {"h2o", 7, 10}, {"nh3", 8, 10}, {"n2", 10, 14}};
  for (const auto& c : cases) {
    const std::string path = std::string(CSA_DATA_DIR) + "/" + c.name + "_sto3g.json";
    const auto t = csa::parse_integrals(path);
    EXPECT_EQ(t.n_spatial, c.n) << c.name;
    EXPECT_EQ(t.n_electrons, c.ne) << c.name;
    EXPECT_TRUE(t.has_real_orbital_symmetry()) << c.name;
  }
}

TEST(Integrals, HartreeFockEnergyMatchesFixture) {
  for (const char* name : {"h2", "lih"}) {
    const std::string path = std::string(CSA_DATA_DIR) + "/" + name + "_sto3g.json";
    const auto doc = nlohmann::json::parse(csa::read_file(path));
    const auto t = csa::parse_integrals(path);
    const int nq = 2 * t.n_spatial;
    const double e = csa::expectation(csa::jordan_wigner(t), csa::hf_state(nq, t.n_electrons, csa::Mapping::kJordanWigner));
    EXPECT_NEAR(e, doc["hf_energy"].get<double>(), 1e-8) << name;
  }
}

TEST(Integrals, MirrorCompletion) {
  const auto t = csa::parse_integrals_text(R"({"n_spatial": 2, "n_electrons": 2, "scalar_term": 0,
    "h": [[0, 1, 0.25]], "g": [[0, 1, 0, 0, 0.5]]})");
  EXPECT_EQ(t.h(1, 0), 0.25);
  for (auto [p, q, r, s] : {std::array{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}})
    EXPECT_EQ(t.g(p, q, r, s), 0.5);
  EXPECT_EQ(t.g(1, 1, 0, 0), 0.0);
}

TEST(Integrals, TwoFoldSymmetryKeepsOnlyPairSwap) {
  const auto t = csa::parse_integrals_text(R"({"n_spatial": 2, "n_electrons": 2, "scalar_term": 0,
    "symmetry": "2-fold", "g": [[0, 1, 0, 0, 0.5]]})");
  EXPECT_EQ(t.g(0, 0, 0, 1), 0.5);
  EXPECT_EQ(t.g(1, 0, 0, 0), 0.0);
}

TEST(Integrals, MalformedNumberReportsLine) {
  try {
    csa::parse_integrals_text("{\n\"n_spatial\": 2,\n\"n_electrons\": 2,\n\"scalar_term\": 1.2.3\n}");
    FAIL() << "no error";
  } catch (const csa::ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Integrals, BadIndexNamesEntry) {
  try {
    csa::parse_integrals_text(R"({"n_spatial": 2, "n_electrons": 2, "scalar_term": 0,
      "g": [[0, 0, 0, 0, 1.0], [0, 0, 5, 0, 1.0]]})");
    FAIL() << "no error";
  } catch (const csa::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("g entry 2"), std::string::npos) << e.what();
  }
}

TEST(Integrals, MissingFieldAndConflicts) {
  EXPECT_THROW(csa::parse_integrals_text(R"({"n_spatial": 2, "scalar_term": 0})"), csa::ParseError);
  EXPECT_THROW(csa::parse_integrals_text(R"({"n_spatial": 2, "n_electrons": 9, "scalar_term": 0})"),
               csa::ValidationError);
  EXPECT_THROW(csa::parse_integrals_text(R"({"n_spatial": 2, "n_electrons": 2, "scalar_term": 0,
    "h": [[0, 1, 0.25], [0, 1, 0.5]]})"), csa::ValidationError);
}

TEST(Integrals, FormatRoundTrip) {
  std::mt19937_64 rng(3);
  const auto t = oracle::random_integrals(3, 2, rng);
  const auto back = csa::parse_integrals_text(csa::format_integrals(t));
  EXPECT_TRUE(back.h == t.h);
  EXPECT_TRUE(back.g == t.g);
  EXPECT_EQ(back.scalar_term, t.scalar_term);
  EXPECT_EQ(back.n_electrons, t.n_electrons);
}

TEST(PauliText, FileRoundTrip) {
  const auto h = csa::bravyi_kitaev(csa::parse_integrals(CSA_DATA_DIR "/lih_sto3g.json"));
  EXPECT_EQ(csa::parse_pauli_sum(csa::format_pauli_sum(h)), h);
}

TEST(Documents, GroupsAndDecompositionAreJson) {
  const auto h = csa::parse_pauli_sum("0.5 Z0 Z1\n0.3 X0\n0.2 Z0\n");
  const auto groups = nlohmann::json::parse(csa::format_groups(csa::sorted_insertion(h, csa::Relation::kFullCommute)));
  ASSERT_EQ(groups["groups"].size(), 2u);
  EXPECT_EQ(groups["groups"][1]["terms"].size(), 1u);

  const auto t = csa::parse_integrals(CSA_DATA_DIR "/h2_sto3g.json");
  const auto r = csa::svd_factorize(t, 1e-5);
  const auto doc = nlohmann::json::parse(csa::format_decomposition(r, false));
  EXPECT_FALSE(doc.contains("wall_seconds"));
  EXPECT_EQ(csa::format_decomposition(r, false), csa::format_decomposition(r, false));
}

}  // namespace
