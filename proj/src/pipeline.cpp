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

#include "csa/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "csa/errors.hpp"
#include "csa/fock_sector.hpp"
#include "csa/io.hpp"

namespace csa {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string normalize(std::string_view s) {
  std::string out;
  for (char c : s) out.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

/// Runs f, prefixing any library error with the stage name.
template <class F>
auto staged(const std::string& stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw e.with_context(stage);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(stage + ": " + e.what(), e.best_value());
  } catch (const DecompositionError& e) {
    throw DecompositionError(stage + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(stage + ": " + e.what());
  } catch (const DimensionError& e) {
    throw DimensionError(stage + ": " + e.what());
  } catch (const NonHermitianError& e) {
    throw NonHermitianError(stage + ": " + e.what());
  } catch (const Error& e) {
    throw Error(stage + ": " + e.what());
  }
}

}  // namespace

std::string to_string(InputKind k) { return k == InputKind::kIntegrals ? "integrals" : "pauli"; }

std::string to_string(Method m) {
  switch (m) {
    case Method::kQwcLf: return "qwc-lf";
    case Method::kQwcSi: return "qwc-si";
    case Method::kFcSi: return "fc-si";
    case Method::kSvd: return "svd";
    case Method::kFro: return "fro";
    case Method::kGfro: return "gfro";
    case Method::kVgfro: return "vgfro";
  }
  return "unknown";
}

InputKind parse_input_kind(std::string_view s) {
  const std::string n = normalize(s);
  if (n == "integrals") return InputKind::kIntegrals;
  if (n == "pauli") return InputKind::kPauli;
  throw ValidationError("unknown input kind \"" + std::string(s) + "\"");
}

Method parse_method(std::string_view s) {
  const std::string n = normalize(s);
  for (Method m : all_methods()) {
    if (to_string(m) == n) return m;
  }
  throw ValidationError("unknown method \"" + std::string(s) + "\"");
}

StateKind parse_state_kind(std::string_view s) {
  const std::string n = normalize(s);
  if (n == "ground" || n == "exact-ground") return StateKind::kExactGround;
  if (n == "hf" || n == "hartree-fock") return StateKind::kHartreeFock;
  throw ValidationError("unknown state \"" + std::string(s) + "\"");
}

bool is_fermionic(Method m) {
  return m == Method::kSvd || m == Method::kFro || m == Method::kGfro || m == Method::kVgfro;
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods{Method::kQwcLf, Method::kQwcSi, Method::kFcSi, Method::kSvd,
                                           Method::kFro,   Method::kGfro,  Method::kVgfro};
  return methods;
}

void RunConfig::validate() const {
  if (kind == InputKind::kPauli && is_fermionic(method)) {
    throw ValidationError("method " + to_string(method) + " needs an integral input");
  }
  if (kind == InputKind::kPauli && state == StateKind::kHartreeFock) {
    throw ValidationError("the Hartree-Fock state needs an integral input");
  }
  if (!(norm_tol > 0.0)) throw ValidationError("tolerance must be positive");
  if (!(w >= 0.0)) throw ValidationError("w must be non-negative");
  if (mu < 0) throw ValidationError("mu must be non-negative");
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (fro_restarts < 1) throw ValidationError("FRO needs at least one start");
}

Report run(const RunConfig& config) {
  const auto t_start = Clock::now();
  staged("config", [&] { config.validate(); });
  Report rep;
  rep.config = config;
  rep.input_name = config.input.stem().string();

  auto t0 = Clock::now();
  IntegralTensors t;
  PauliSum h;
  if (config.kind == InputKind::kIntegrals) {
    t = staged("load", [&] { return parse_integrals(config.input); });
    h = staged("map", [&] { return map_hamiltonian(t, config.mapping); });
  } else {
    h = staged("load", [&] { return parse_pauli(config.input); });
  }
  rep.n_qubits = h.n_qubits();
  rep.pauli_terms = h.size();
  rep.notes.push_back("pauli_terms counts every stored product, identity included");
  rep.times.load = seconds_since(t0);

  // State used for the variances.
  t0 = Clock::now();
  Wavefunction psi;
  std::optional<FragmentVarianceEvaluator> evaluator;
  staged("state", [&] {
    if (config.kind == InputKind::kIntegrals) {
      if (config.state == StateKind::kExactGround) {
        const auto gs = sector_ground_state(t, config.eigensolver);
        psi = embed(gs.sector, gs.vector, config.mapping);
        if (is_fermionic(config.method)) evaluator.emplace(FragmentVarianceEvaluator::from_sector(gs.sector, gs.vector));
      } else {
        psi = hf_state(2 * t.n_spatial, t.n_electrons, config.mapping);
        if (is_fermionic(config.method)) {
          evaluator.emplace(t.n_spatial,
                            std::vector<std::pair<std::uint64_t, double>>{{hf_determinant(t.n_electrons), 1.0}});
        }
      }
    } else {
      psi = ground_state(h, config.eigensolver).state;
    }
  });
  rep.energy = staged("state", [&] { return expectation(h, psi); });
  if (config.kind == InputKind::kIntegrals && config.state == StateKind::kExactGround) {
    rep.notes.push_back("exact ground state taken at the input electron count");
  }
  rep.times.state = seconds_since(t0);

  t0 = Clock::now();
  std::vector<double> variances;
  if (!is_fermionic(config.method)) {
    rep.qubit_groups = staged("partition", [&] {
      switch (config.method) {
        case Method::kQwcLf: return largest_first(h, Relation::kQubitwiseCommute);
        case Method::kQwcSi: return sorted_insertion(h, Relation::kQubitwiseCommute);
        default: return sorted_insertion(h, Relation::kFullCommute);
      }
    });
    std::vector<std::string> diagnostics;
    if (!validate_groups(rep.qubit_groups, h, &diagnostics)) {
      throw Error("partition: grouping failed validation: " + (diagnostics.empty() ? "" : diagnostics.front()));
    }
    rep.groups = rep.qubit_groups.size();
    rep.times.partition = seconds_since(t0);
    t0 = Clock::now();
    for (const auto& g : rep.qubit_groups) variances.push_back(staged("variance", [&] { return variance(g.terms, psi); }));
  } else {
    DecompositionResult d = staged("partition", [&] {
      switch (config.method) {
        case Method::kSvd: return svd_factorize(t, config.norm_tol);
        case Method::kFro: {
          FroOptions o;
          o.seed = config.seed;
          o.restarts = config.fro_restarts;
          return fro_minimal(t, config.norm_tol, o);
        }
        case Method::kGfro: {
          GreedyOptions o;
          o.seed = config.seed;
          return gfro(t, config.norm_tol, o);
        }
        default: {
          GreedyOptions o;
          o.seed = config.seed;
          const Wavefunction ref = hf_state(2 * t.n_spatial, t.n_electrons, config.mapping);
          return vgfro(t, config.norm_tol, config.w, config.mu, ref, config.mapping, o);
        }
      }
    });
    Tensor4 check = t.g;
    for (const auto& f : d.fragments) check -= fragment_tensor(f);
    if (std::abs(check.norm1() - d.residual_norm1) > 1e-12 * std::max(1.0, d.residual_norm1) ||
        d.residual_norm1 > config.norm_tol) {
      throw DecompositionError("partition: reconstruction check failed");
    }
    rep.two_body_fragments = d.fragments.size();
    rep.groups = d.fragments.size() + 1;
    rep.residual_norm1 = d.residual_norm1;
    rep.notes.push_back("groups = two-body fragments + 1 one-body fragment; the scalar term is not counted");
    rep.notes.push_back("fragment variances evaluated on the fixed-electron-number determinant space of the state");
    if (config.method == Method::kFro) rep.notes.push_back("FRO fragment count from " + d.mode + " search");
    rep.times.partition = seconds_since(t0);
    t0 = Clock::now();
    staged("variance", [&] {
      variances.push_back(evaluator->variance(Tensor4(t.n_spatial), &t.h));
      for (const auto& f : d.fragments) variances.push_back(evaluator->variance(fragment_tensor(f)));
    });
    rep.decomposition = std::move(d);
  }
  rep.measurement = staged("allocate", [&] {
    return allocate(variances, config.epsilon, to_string(config.method), config.state);
  });
  rep.times.variance = seconds_since(t0);
  rep.times.total = seconds_since(t_start);
  return rep;
}

std::string report_document(const std::vector<Report>& reports, bool include_timing) {
  using nlohmann::json;
  json list = json::array();
  for (const auto& r : reports) {
    const auto& c = r.config;
    json doc;
    doc["input"] = r.input_name;
    doc["config"] = {{"input", c.input.string()},
                     {"kind", to_string(c.kind)},
                     {"mapping", to_string(c.mapping)},
                     {"method", to_string(c.method)},
                     {"tol", c.norm_tol},
                     {"w", c.w},
                     {"mu", c.mu},
                     {"state", to_string(c.state)},
                     {"epsilon", c.epsilon},
                     {"seed", c.seed}};
    doc["n_qubits"] = r.n_qubits;
    doc["pauli_terms"] = r.pauli_terms;
    doc["groups"] = r.groups;
    if (r.two_body_fragments) doc["two_body_fragments"] = *r.two_body_fragments;
    if (r.residual_norm1) doc["residual_norm1"] = *r.residual_norm1;
    if (r.decomposition) doc["decomposition_mode"] = r.decomposition->mode;
    doc["energy"] = r.energy;
    const auto& m = r.measurement;
    doc["measurement"] = {{"state", to_string(m.state_kind)},
                          {"epsilon", m.epsilon},
                          {"eps2K", m.total_eps2K},
                          {"total_shots", m.total_shots()},
                          {"fragment_variances", m.fragment_variances},
                          {"shot_fractions", m.shot_fractions}};
    doc["seed"] = c.seed;
    doc["notes"] = r.notes;
    if (include_timing) {
      doc["timing"] = {{"load", r.times.load},
                       {"state", r.times.state},
                       {"partition", r.times.partition},
                       {"variance", r.times.variance},
                       {"total", r.times.total}};
    }
    list.push_back(std::move(doc));
  }
  json out;
  out["format"] = "csa-measure report";
  out["version"] = 1;
  out["reports"] = std::move(list);
  return out.dump(2) + "\n";
}

std::string report_table(const std::vector<Report>& reports, bool include_timing) {
  std::vector<std::string> header{"input", "mapping", "method", "state", "terms", "groups", "residual", "eps2K"};
  if (include_timing) header.push_back("time_s");
  std::vector<std::vector<std::string>> rows{header};
  char buf[64];
  for (const auto& r : reports) {
    std::vector<std::string> row{r.input_name, to_string(r.config.mapping), to_string(r.config.method),
                                 to_string(r.config.state), std::to_string(r.pauli_terms), std::to_string(r.groups)};
    if (r.residual_norm1) {
      std::snprintf(buf, sizeof buf, "%.2e", *r.residual_norm1);
      row.emplace_back(buf);
    } else {
      row.emplace_back("-");
    }
    std::snprintf(buf, sizeof buf, "%.6f", r.measurement.total_eps2K);
    row.emplace_back(buf);
    if (include_timing) {
      std::snprintf(buf, sizeof buf, "%.2f", r.times.total);
      row.emplace_back(buf);
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t i = 0; i < rows[k].size(); ++i) {
      const auto& cell = rows[k][i];
      const bool left = i < 4;
      const std::string pad(width[i] - cell.size(), ' ');
      out += left ? cell + pad : pad + cell;
      if (i + 1 < rows[k].size()) out += "  ";
    }
    out += '\n';
    if (k == 0) {
      for (std::size_t i = 0; i < width.size(); ++i) {
        out += std::string(width[i], '-');
        if (i + 1 < width.size()) out += "  ";
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace csa
