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

#include "csa/pauli_text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "csa/errors.hpp"

namespace csa {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<int> parse_header(std::string_view comment) {
  // "# n_qubits = 12"
  auto body = trim(comment.substr(1));
  constexpr std::string_view key = "n_qubits";
  if (body.substr(0, key.size()) != key) return std::nullopt;
  body = trim(body.substr(key.size()));
  if (body.empty() || body.front() != '=') return std::nullopt;
  body = trim(body.substr(1));
  int n = 0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), n);
  if (ec != std::errc() || ptr != body.data() + body.size()) return std::nullopt;
  return n;
}

struct ParsedLine {
  double coefficient;
  std::vector<std::pair<int, char>> letters;
  std::size_t line;
};

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_pauli_sum(const PauliSum& sum) {
  std::ostringstream out;
  out << "# n_qubits = " << sum.n_qubits() << '\n';
  for (const auto& [p, c] : sum) {
    out << format_double(c);
    const auto letters = p.to_string();
    if (!letters.empty()) out << ' ' << letters;
    out << '\n';
  }
  return out.str();
}

PauliSum parse_pauli_sum(std::string_view text, std::optional<int> n_qubits) {
  std::vector<ParsedLine> lines;
  int max_index = -1;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto raw = trim(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (raw.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (raw.front() == '#') {
      if (auto n = parse_header(raw)) {
        if (*n <= 0 || *n > PauliProduct::kMaxQubits) {
          throw ParseError("n_qubits must be in [1, 64]", line_no);
        }
        if (n_qubits && *n_qubits != *n) {
          throw ParseError("header declares " + std::to_string(*n) + " qubits, caller expects " +
                               std::to_string(*n_qubits),
                           line_no);
        }
        n_qubits = *n;
      }
      continue;
    }
    const auto tokens = split_ws(raw);
    ParsedLine parsed{0.0, {}, line_no};
    const auto coef = tokens.front();
    auto [ptr, ec] = std::from_chars(coef.data(), coef.data() + coef.size(), parsed.coefficient);
    if (ec != std::errc() || ptr != coef.data() + coef.size() || !std::isfinite(parsed.coefficient)) {
      throw ParseError("malformed coefficient '" + std::string(coef) + "'", line_no);
    }
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto tok = tokens[t];
      const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(tok.front())));
      if (letter != 'X' && letter != 'Y' && letter != 'Z' && letter != 'I') {
        throw ParseError("unknown Pauli letter in '" + std::string(tok) + "'", line_no);
      }
      int qubit = -1;
      auto [qptr, qec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), qubit);
      if (tok.size() < 2 || qec != std::errc() || qptr != tok.data() + tok.size() || qubit < 0 ||
          qubit >= PauliProduct::kMaxQubits) {
        throw ParseError("bad qubit index in '" + std::string(tok) + "'", line_no);
      }
      for (const auto& [q, l] : parsed.letters) {
        if (q == qubit) throw ParseError("qubit " + std::to_string(qubit) + " repeated", line_no);
      }
      if (letter != 'I') parsed.letters.emplace_back(qubit, letter);
      max_index = std::max(max_index, qubit);
    }
    lines.push_back(std::move(parsed));
  }

  const int width = n_qubits.value_or(std::max(1, max_index + 1));
  std::vector<PauliTerm> terms;
  terms.reserve(lines.size());
  for (const auto& l : lines) {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    for (const auto& [q, letter] : l.letters) {
      if (q >= width) {
        throw ParseError("qubit index " + std::to_string(q) + " exceeds n_qubits = " +
                             std::to_string(width),
                         l.line);
      }
      const std::uint64_t bit = std::uint64_t{1} << q;
      if (letter == 'X' || letter == 'Y') x |= bit;
      if (letter == 'Z' || letter == 'Y') z |= bit;
    }
    terms.push_back({l.coefficient, Phase::kPlusOne, PauliProduct(width, x, z)});
  }
  return accumulate(width, terms);
}

}  // namespace csa
