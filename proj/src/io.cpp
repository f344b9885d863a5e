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

#include "csa/io.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "csa/errors.hpp"
#include "csa/pauli_text.hpp"

namespace csa {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
  if (!out) throw Error("write failed for " + path.string());
}

namespace {

using Key4 = std::array<int, 4>;

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

int require_int(const json& doc, const char* field) {
  if (!doc.contains(field)) throw ParseError(std::string("missing field \"") + field + "\"");
  const auto& v = doc.at(field);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + field + "\" must be an integer");
  return v.get<int>();
}

double require_number(const json& doc, const char* field) {
  if (!doc.contains(field)) throw ParseError(std::string("missing field \"") + field + "\"");
  const auto& v = doc.at(field);
  if (!v.is_number()) throw ParseError(std::string("field \"") + field + "\" must be a number");
  return v.get<double>();
}

std::string entry_name(const char* field, std::size_t i) {
  return std::string(field) + " entry " + std::to_string(i + 1);
}

/// Indices then value of one list entry.
std::pair<std::vector<int>, double> read_entry(const json& e, const char* field, std::size_t i,
                                               std::size_t arity, int n) {
  if (!e.is_array() || e.size() != arity + 1) {
    throw ParseError(entry_name(field, i) + ": expected " + std::to_string(arity) + " indices and a value");
  }
  std::vector<int> idx;
  for (std::size_t k = 0; k < arity; ++k) {
    if (!e[k].is_number_integer()) throw ParseError(entry_name(field, i) + ": index must be an integer");
    const int v = e[k].get<int>();
    if (v < 0 || v >= n) {
      throw ParseError(entry_name(field, i) + ": index " + std::to_string(v) + " outside [0, " +
                       std::to_string(n) + ")");
    }
    idx.push_back(v);
  }
  if (!e[arity].is_number() || !std::isfinite(e[arity].get<double>())) {
    throw ParseError(entry_name(field, i) + ": value must be a finite number");
  }
  return {idx, e[arity].get<double>()};
}

std::vector<Key4> orbit(const Key4& k, bool eightfold) {
  const auto [p, q, r, s] = k;
  if (!eightfold) return {Key4{p, q, r, s}, Key4{r, s, p, q}};
  return {Key4{p, q, r, s}, Key4{q, p, r, s}, Key4{p, q, s, r}, Key4{q, p, s, r},
          Key4{r, s, p, q}, Key4{s, r, p, q}, Key4{r, s, q, p}, Key4{s, r, q, p}};
}

std::string key_string(const Key4& k) {
  return "(" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2]) + "," +
         std::to_string(k[3]) + ")";
}

}  // namespace

IntegralTensors parse_integrals_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), line_of(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!doc.is_object()) throw ParseError("integral document must be a JSON object");

  IntegralTensors t;
  t.n_spatial = require_int(doc, "n_spatial");
  t.n_electrons = require_int(doc, "n_electrons");
  t.scalar_term = require_number(doc, "scalar_term");
  if (t.n_spatial < 1 || t.n_spatial > 32) throw ValidationError("n_spatial must be in [1, 32]");
  const int n = t.n_spatial;

  bool eightfold = true;
  if (doc.contains("symmetry")) {
    const auto& s = doc.at("symmetry");
    if (!s.is_string()) throw ParseError("field \"symmetry\" must be a string");
    if (s == "8-fold") {
      eightfold = true;
    } else if (s == "2-fold") {
      eightfold = false;
    } else {
      throw ParseError("field \"symmetry\" must be \"8-fold\" or \"2-fold\"");
    }
  }

  t.h = Eigen::MatrixXd::Zero(n, n);
  std::map<std::pair<int, int>, std::pair<double, std::size_t>> h_explicit;
  if (doc.contains("h")) {
    const auto& list = doc.at("h");
    if (!list.is_array()) throw ParseError("field \"h\" must be a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto [idx, v] = read_entry(list[i], "h", i, 2, n);
      const auto key = std::pair{idx[0], idx[1]};
      const auto [it, fresh] = h_explicit.emplace(key, std::pair{v, i});
      if (!fresh && it->second.first != v) {
        throw ValidationError(entry_name("h", i) + " repeats position (" + std::to_string(idx[0]) + "," +
                              std::to_string(idx[1]) + ") of entry " + std::to_string(it->second.second + 1) +
                              " with a different value");
      }
    }
  }
  for (const auto& [key, val] : h_explicit) {
    t.h(key.first, key.second) = val.first;
    if (!h_explicit.count({key.second, key.first})) t.h(key.second, key.first) = val.first;
  }

  t.g = Tensor4(n);
  std::map<Key4, std::pair<double, std::size_t>> g_explicit;
  if (doc.contains("g")) {
    const auto& list = doc.at("g");
    if (!list.is_array()) throw ParseError("field \"g\" must be a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto [idx, v] = read_entry(list[i], "g", i, 4, n);
      const Key4 key{idx[0], idx[1], idx[2], idx[3]};
      const auto [it, fresh] = g_explicit.emplace(key, std::pair{v, i});
      if (!fresh && it->second.first != v) {
        throw ValidationError(entry_name("g", i) + " repeats position " + key_string(key) + " of entry " +
                              std::to_string(it->second.second + 1) + " with a different value");
      }
    }
  }
  std::map<Key4, std::pair<double, std::size_t>> implied;
  for (const auto& [key, val] : g_explicit) {
    for (const auto& k : orbit(key, eightfold)) {
      if (g_explicit.count(k)) continue;
      const auto [it, fresh] = implied.emplace(k, val);
      if (!fresh && std::abs(it->second.first - val.first) > 1e-10) {
        throw ValidationError("g entries " + std::to_string(it->second.second + 1) + " and " +
                              std::to_string(val.second + 1) + " imply different values at " + key_string(k));
      }
    }
  }
  for (const auto& [k, v] : implied) t.g(k[0], k[1], k[2], k[3]) = v.first;
  for (const auto& [k, v] : g_explicit) t.g(k[0], k[1], k[2], k[3]) = v.first;

  t.validate();
  return t;
}

IntegralTensors parse_integrals(const std::filesystem::path& path) {
  return parse_integrals_text(read_file(path));
}

std::string format_integrals(const IntegralTensors& t) {
  t.validate();
  const int n = t.n_spatial;
  const bool eightfold = t.has_real_orbital_symmetry();
  std::string out = "{\n";
  out += "  \"n_spatial\": " + std::to_string(n) + ",\n";
  out += "  \"n_electrons\": " + std::to_string(t.n_electrons) + ",\n";
  out += "  \"scalar_term\": " + format_double(t.scalar_term) + ",\n";
  out += std::string("  \"symmetry\": \"") + (eightfold ? "8-fold" : "2-fold") + "\",\n";
  out += "  \"h\": [";
  bool first = true;
  for (int p = 0; p < n; ++p) {
    for (int q = p; q < n; ++q) {
      if (t.h(p, q) == 0.0) continue;
      out += first ? "\n" : ",\n";
      first = false;
      out += "    [" + std::to_string(p) + ", " + std::to_string(q) + ", " + format_double(t.h(p, q)) + "]";
    }
  }
  out += first ? "],\n" : "\n  ],\n";
  out += "  \"g\": [";
  first = true;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const Key4 k{p, q, r, s};
          const auto o = orbit(k, eightfold);
          if (*std::min_element(o.begin(), o.end()) != k || t.g(p, q, r, s) == 0.0) continue;
          out += first ? "\n" : ",\n";
          first = false;
          out += "    [" + std::to_string(p) + ", " + std::to_string(q) + ", " + std::to_string(r) + ", " +
                 std::to_string(s) + ", " + format_double(t.g(p, q, r, s)) + "]";
        }
  out += first ? "]\n" : "\n  ]\n";
  out += "}\n";
  return out;
}

PauliSum parse_pauli(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  return parse_pauli_sum(text);
}

namespace {

std::vector<std::string> term_lines(const PauliSum& s) {
  std::vector<std::string> lines;
  std::istringstream in(format_pauli_sum(s));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string format_groups(const std::vector<FragmentGroup>& groups) {
  json doc;
  doc["n_qubits"] = groups.empty() ? 0 : groups.front().terms.n_qubits();
  json list = json::array();
  for (const auto& g : groups) {
    list.push_back({{"relation", to_string(g.relation)}, {"terms", term_lines(g.terms)}});
  }
  doc["groups"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::string format_decomposition(const DecompositionResult& r, bool include_timing) {
  json doc;
  doc["method"] = to_string(r.method);
  doc["mode"] = r.mode;
  doc["seed"] = r.seed;
  doc["restart"] = r.restart;
  doc["converged"] = r.converged;
  doc["residual_norm1"] = r.residual_norm1;
  doc["residual_trace"] = r.residual_trace;
  doc["iterations"] = r.iterations;
  json frags = json::array();
  for (const auto& f : r.fragments) {
    if (const auto* c = std::get_if<CsaFragment>(&f)) {
      frags.push_back({{"kind", "csa"}, {"angles", c->rotation.angles}, {"lambda", matrix_json(c->lambda)}});
    } else {
      const auto& s = std::get<SvdFragment>(f);
      std::vector<double> omegas(s.omegas.data(), s.omegas.data() + s.omegas.size());
      frags.push_back({{"kind", "svd"}, {"weight", s.weight}, {"omegas", omegas},
                       {"transform", matrix_json(s.transform)}});
    }
  }
  doc["fragments"] = std::move(frags);
  if (include_timing) doc["wall_seconds"] = r.wall_seconds;
  return doc.dump(2) + "\n";
}

}  // namespace csa
