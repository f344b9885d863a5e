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

// partition: split an operator into measurable fragments and report the
// measurement budget.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csa/errors.hpp"
#include "csa/io.hpp"
#include "csa/pipeline.hpp"

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kInvalid = 2, kNotConverged = 3 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition a Hamiltonian into simultaneously measurable fragments"};
  csa::RunConfig cfg;
  std::string kind = "integrals";
  std::string mapping = "bk";
  std::string method = "fc-si";
  std::string state = "ground";
  std::string out;
  std::string fragments_out;
  bool timing = false;
  bool quiet = false;

  app.add_option("--input", cfg.input, "Integral document or Pauli text file")->required()->check(CLI::ExistingFile);
  app.add_option("--kind", kind, "integrals | pauli")->capture_default_str();
  app.add_option("--mapping", mapping, "jw | bk")->capture_default_str();
  app.add_option("--method", method, "qwc-lf | qwc-si | fc-si | svd | fro | gfro | vgfro | all")
      ->capture_default_str();
  app.add_option("--tol", cfg.norm_tol, "Residual 1-norm threshold")->capture_default_str();
  app.add_option("--w", cfg.w, "Variance weight for vgfro")->capture_default_str();
  app.add_option("--mu", cfg.mu, "Fragments fitted with the variance term")->capture_default_str();
  app.add_option("--state", state, "ground | hf")->capture_default_str();
  app.add_option("--epsilon", cfg.epsilon, "Target precision (Hartree)")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Optimizer seed")->capture_default_str();
  app.add_option("--fro-restarts", cfg.fro_restarts, "Random starts per fragment count in fro")
      ->capture_default_str();
  app.add_option("--out", out, "Write the JSON report here");
  app.add_option("--fragments-out", fragments_out, "Write groups or fragments here (single method only)");
  app.add_flag("--timing", timing, "Include stage timings in the JSON report");
  app.add_flag("-q,--quiet", quiet, "Do not print the table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    cfg.kind = csa::parse_input_kind(kind);
    cfg.mapping = csa::parse_mapping(mapping);
    cfg.state = csa::parse_state_kind(state);
    std::vector<csa::Method> methods;
    if (method == "all") {
      for (csa::Method m : csa::all_methods()) {
        if (cfg.kind == csa::InputKind::kIntegrals || !csa::is_fermionic(m)) methods.push_back(m);
      }
    } else {
      methods.push_back(csa::parse_method(method));
    }
    if (!fragments_out.empty() && methods.size() != 1) {
      throw csa::ValidationError("--fragments-out needs a single method");
    }

    std::vector<csa::Report> reports;
    for (csa::Method m : methods) {
      cfg.method = m;
      reports.push_back(csa::run(cfg));
    }
    if (!quiet) std::cout << csa::report_table(reports);
    if (!out.empty()) csa::write_file(out, csa::report_document(reports, timing));
    if (!fragments_out.empty()) {
      const auto& r = reports.front();
      csa::write_file(fragments_out, r.decomposition ? csa::format_decomposition(*r.decomposition, timing)
                                                     : csa::format_groups(r.qubit_groups));
    }
    return kOk;
  } catch (const csa::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (best " << e.best_value() << ")\n";
    return kNotConverged;
  } catch (const csa::DecompositionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotConverged;
  } catch (const csa::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const csa::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const csa::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const csa::NonHermitianError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
