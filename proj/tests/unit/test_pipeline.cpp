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

#include <filesystem>
#include <string>

#include <json.hpp>

#include "csa/errors.hpp"
#include "csa/io.hpp"
#include "csa/pipeline.hpp"

#ifndef CSA_DATA_DIR
#define CSA_DATA_DIR "data"
#endif

namespace {

namespace fs = std::filesystem;

csa::RunConfig h2_config(csa::Method m) {
  csa::RunConfig c;
  c.input = CSA_DATA_DIR "/h2_sto3g.json";
  c.method = m;
  return c;
}

fs::path scratch(const std::string& name, const std::string& contents) {
  const fs::path p = fs::temp_directory_path() / ("csa_pipeline_" + name);
  csa::write_file(p, contents);
  return p;
}

TEST(Parsing, MethodNames) {
  EXPECT_EQ(csa::parse_method("QWC_LF"), csa::Method::kQwcLf);
  EXPECT_EQ(csa::parse_method("fc-si"), csa::Method::kFcSi);
  EXPECT_EQ(csa::parse_method("VGFRO"), csa::Method::kVgfro);
  EXPECT_THROW(csa::parse_method("lf"), csa::ValidationError);
  EXPECT_EQ(csa::parse_state_kind("hf"), csa::StateKind::kHartreeFock);
  for (auto m : csa::all_methods()) EXPECT_EQ(csa::parse_method(csa::to_string(m)), m);
}

TEST(Run, H2QubitMethods) {
  const auto fc = csa::run(h2_config(csa::Method::kFcSi));
  EXPECT_EQ(fc.n_qubits, 4);
  EXPECT_EQ(fc.pauli_terms, 15u);
  EXPECT_EQ(fc.groups, 2u);
  EXPECT_NEAR(fc.measurement.total_eps2K, 0.136, 5e-4);
  const auto lf = csa::run(h2_config(csa::Method::kQwcLf));
  EXPECT_EQ(lf.groups, 3u);
  EXPECT_NEAR(lf.energy, fc.energy, 1e-10);
}

TEST(Run, H2FermionicMethods) {
  const auto svd = csa::run(h2_config(csa::Method::kSvd));
  EXPECT_EQ(svd.groups, 4u);
  ASSERT_TRUE(svd.two_body_fragments.has_value());
  EXPECT_EQ(*svd.two_body_fragments, 3u);
  EXPECT_EQ(svd.measurement.fragment_variances.size(), 4u);
  const auto gfro = csa::run(h2_config(csa::Method::kGfro));
  EXPECT_EQ(gfro.groups, 3u);
  EXPECT_LE(*gfro.residual_norm1, 1e-5);
}

TEST(Run, HartreeFockStateHasSmallerSpread) {
  auto c = h2_config(csa::Method::kFcSi);
  c.state = csa::StateKind::kHartreeFock;
  const auto r = csa::run(c);
  EXPECT_NEAR(r.energy, -1.0661086493, 1e-8);
  EXPECT_EQ(r.measurement.state_kind, csa::StateKind::kHartreeFock);
}

TEST(Run, PauliInput) {
  const auto p = scratch("x.txt", "0.5 Z0 Z1\n0.3 X0\n0.2 Z0\n");
  csa::RunConfig c;
  c.input = p;
  c.kind = csa::InputKind::kPauli;
  const auto r = csa::run(c);
  EXPECT_EQ(r.groups, 2u);
  c.method = csa::Method::kSvd;
  EXPECT_THROW(csa::run(c), csa::ValidationError);
}

TEST(Run, DocumentsAreReproducible) {
  const auto c = h2_config(csa::Method::kFro);
  const auto a = csa::report_document({csa::run(c)});
  const auto b = csa::report_document({csa::run(c)});
  EXPECT_EQ(a, b);
  const auto doc = nlohmann::json::parse(a);
  EXPECT_EQ(doc["reports"].size(), 1u);
  EXPECT_FALSE(csa::report_table({csa::run(h2_config(csa::Method::kFcSi))}).empty());
}

TEST(Run, ErrorsNameTheStage) {
  auto c = h2_config(csa::Method::kFcSi);
  c.input = scratch("bad.json", "{\n\"n_spatial\": 2,\n\"n_electrons\": 2,\n\"scalar_term\": 1.2.3\n}");
  try {
    csa::run(c);
    FAIL() << "no error";
  } catch (const csa::ParseError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("load", 0), 0u) << e.what();
    EXPECT_EQ(e.line(), 4u);
  }
  c = h2_config(csa::Method::kFcSi);
  c.epsilon = 0.0;
  EXPECT_THROW(csa::run(c), csa::ValidationError);
  c = h2_config(csa::Method::kFcSi);
  c.input = "/nonexistent/file.json";
  EXPECT_THROW(csa::run(c), csa::Error);
}

}  // namespace
