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

#include "csa/statevec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "csa/errors.hpp"
#include "csa/krylov.hpp"
#include "parallel.hpp"

namespace csa {

namespace {

struct CompiledTerm {
  std::uint64_t x;
  std::uint64_t z;
  Amplitude factor;
};

std::vector<CompiledTerm> compile(const PauliSum& h) {
  std::vector<CompiledTerm> out;
  out.reserve(h.size());
  for (const auto& [p, c] : h) {
    out.push_back({p.x_mask(), p.z_mask(), c * to_complex(phase_from_power(p.y_count()))});
  }
  return out;
}

constexpr std::size_t kChunk = 4096;

}  // namespace

Wavefunction::Wavefunction(int n_qubits, std::vector<Amplitude> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > 30) throw DimensionError("wavefunction qubit count out of range");
  if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
    throw DimensionError("amplitude count is not 2^n_qubits");
  }
}

Wavefunction Wavefunction::basis_state(int n_qubits, std::uint64_t index) {
  if (n_qubits < 1 || n_qubits > 30) throw DimensionError("wavefunction qubit count out of range");
  std::vector<Amplitude> a(std::size_t{1} << n_qubits);
  if (index >= a.size()) throw DimensionError("basis index out of range");
  a[index] = 1.0;
  return Wavefunction(n_qubits, std::move(a));
}

double Wavefunction::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

Wavefunction Wavefunction::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) throw ValidationError("cannot normalize the zero vector");
  std::vector<Amplitude> a(amplitudes_);
  for (auto& v : a) v /= nrm;
  return Wavefunction(n_qubits_, std::move(a));
}

bool Wavefunction::is_normalized(double tolerance) const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return std::abs(s - 1.0) <= tolerance;
}

void apply_into(const PauliSum& h, std::span<const Amplitude> in, std::span<Amplitude> out) {
  if (in.size() != out.size() || in.size() != (std::size_t{1} << h.n_qubits())) {
    throw DimensionError("operator and state qubit counts differ");
  }
  const auto terms = compile(h);
  const std::size_t dim = in.size();
  const int chunks = static_cast<int>((dim + kChunk - 1) / kChunk);
  parallel_for(chunks, [&](int c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(dim, lo + kChunk);
    std::fill(out.begin() + lo, out.begin() + hi, Amplitude{});
    for (const auto& t : terms) {
      for (std::size_t b = lo; b < hi; ++b) {
        const std::uint64_t src = b ^ t.x;
        const Amplitude v = t.factor * in[src];
        if (std::popcount(src & t.z) & 1) {
          out[b] -= v;
        } else {
          out[b] += v;
        }
      }
    }
  });
}

Wavefunction apply(const PauliSum& h, const Wavefunction& psi) {
  if (h.n_qubits() != psi.n_qubits()) throw DimensionError("operator and state qubit counts differ");
  std::vector<Amplitude> out(psi.dim());
  apply_into(h, psi.amplitudes(), out);
  return Wavefunction(psi.n_qubits(), std::move(out));
}

namespace {

void require_state(const PauliSum& h, const Wavefunction& psi) {
  if (h.n_qubits() != psi.n_qubits()) throw DimensionError("operator and state qubit counts differ");
  if (!psi.is_normalized()) throw ValidationError("state is not normalized");
}

Amplitude inner(std::span<const Amplitude> a, std::span<const Amplitude> b) {
  Amplitude s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace

namespace {

/// <psi|H|psi> and <psi|H^2|psi>. States with few nonzero amplitudes (basis
/// states, sector-embedded states) are scattered from their support only.
std::pair<double, double> moments(const PauliSum& h, const Wavefunction& psi) {
  const auto amps = psi.amplitudes();
  std::vector<std::uint64_t> support;
  for (std::size_t i = 0; i < amps.size() && support.size() <= amps.size() / 8; ++i) {
    if (amps[i] != Amplitude{}) support.push_back(i);
  }
  if (support.size() > amps.size() / 8) {
    std::vector<Amplitude> hp(amps.size());
    apply_into(h, amps, hp);
    return {inner(amps, hp).real(), inner(hp, hp).real()};
  }
  std::vector<Amplitude> hp(amps.size());
  for (const auto& t : compile(h)) {
    for (std::uint64_t b : support) {
      const Amplitude v = t.factor * amps[b];
      if (std::popcount(b & t.z) & 1) {
        hp[b ^ t.x] -= v;
      } else {
        hp[b ^ t.x] += v;
      }
    }
  }
  Amplitude mean{};
  for (std::uint64_t b : support) mean += std::conj(amps[b]) * hp[b];
  return {mean.real(), inner(hp, hp).real()};
}

}  // namespace

double expectation(const PauliSum& h, const Wavefunction& psi) {
  require_state(h, psi);
  return moments(h, psi).first;
}

double variance(const PauliSum& h, const Wavefunction& psi) {
  require_state(h, psi);
  const auto [mean, second] = moments(h, psi);
  return std::max(0.0, second - mean * mean);
}

GroundState ground_state(const PauliSum& h, const EigensolverOptions& options, const Wavefunction* start) {
  if (h.n_qubits() > options.qubit_cap) {
    throw DimensionError("operator exceeds the dense-state qubit cap of " +
                         std::to_string(options.qubit_cap));
  }
  const int n = h.n_qubits();
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Amplitude> x(dim);
  if (start != nullptr) {
    if (start->n_qubits() != n) throw DimensionError("start state qubit count differs");
    std::copy(start->amplitudes().begin(), start->amplitudes().end(), x.begin());
  } else {
    x[0] = 1.0;
  }
  if (options.perturbation > 0.0) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Amplitude> noise(dim);
    double nn = 0.0;
    for (auto& v : noise) {
      v = {u(rng), u(rng)};
      nn += std::norm(v);
    }
    const double scale = options.perturbation / std::sqrt(nn);
    for (std::size_t i = 0; i < dim; ++i) x[i] += scale * noise[i];
  }

  KrylovOptions ko;
  ko.krylov_dim = options.krylov_dim;
  ko.max_restarts = options.max_restarts;
  ko.tolerance = options.tolerance;
  const auto res = lowest_eigenpair<Amplitude>(
      dim, [&](const std::vector<Amplitude>& in, std::vector<Amplitude>& out) { apply_into(h, in, out); },
      std::move(x), ko);
  if (!res.converged) {
    throw ConvergenceError("ground-state eigensolver did not converge", res.residual);
  }
  GroundState gs;
  gs.energy = res.eigenvalue;
  gs.residual = res.residual;
  gs.matvecs = res.matvecs;
  gs.state = Wavefunction(n, res.vector);
  return gs;
}

Wavefunction hf_state(int n_qubits, int n_electrons, Mapping m) {
  if (n_electrons < 0 || n_electrons > n_qubits) {
    throw ValidationError("electron count outside [0, n_qubits]");
  }
  const auto enc = BinaryEncoding::for_mapping(m, n_qubits);
  const std::uint64_t occ = n_electrons == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_electrons) - 1;
  return Wavefunction::basis_state(n_qubits, enc.encode(occ));
}

std::string to_string(StateKind k) {
  switch (k) {
    case StateKind::kExactGround: return "ground";
    case StateKind::kHartreeFock: return "hf";
    case StateKind::kSupplied: return "supplied";
  }
  return "unknown";
}

std::vector<double> MeasurementReport::shots() const {
  std::vector<double> k(shot_fractions);
  for (auto& v : k) v /= epsilon * epsilon;
  return k;
}

MeasurementReport allocate(std::span<const double> variances, double epsilon, std::string method,
                           StateKind kind) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  MeasurementReport r;
  r.epsilon = epsilon;
  r.grouping_method = std::move(method);
  r.state_kind = kind;
  r.fragment_variances.assign(variances.begin(), variances.end());
  double sum_sd = 0.0;
  for (double v : variances) {
    if (v < 0.0) throw ValidationError("negative fragment variance");
    sum_sd += std::sqrt(v);
  }
  for (double v : variances) r.shot_fractions.push_back(std::sqrt(v) * sum_sd);
  r.total_eps2K = sum_sd * sum_sd;
  return r;
}

MeasurementReport allocate(const std::vector<FragmentGroup>& groups, const Wavefunction& psi,
                           double epsilon, std::string method, StateKind kind) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (!psi.is_normalized()) throw ValidationError("state is not normalized");
  std::vector<double> vars(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) vars[i] = variance(groups[i].terms, psi);
  return allocate(vars, epsilon, std::move(method), kind);
}

}  // namespace csa
