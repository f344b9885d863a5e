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

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "csa/fermion.hpp"
#include "csa/grouping.hpp"
#include "csa/pauli.hpp"

namespace csa {

using Amplitude = std::complex<double>;

/// Largest register the dense engine accepts by default (~16 MiB of amplitudes).
inline constexpr int kDefaultQubitCap = 20;

/// Dense state over n qubits; bit k of a basis index is qubit k.
class Wavefunction {
 public:
  Wavefunction() = default;
  /// Throws DimensionError unless amplitudes.size() == 2^n_qubits.
  Wavefunction(int n_qubits, std::vector<Amplitude> amplitudes);

  static Wavefunction basis_state(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm() const;
  Wavefunction normalized() const;
  bool is_normalized(double tolerance = 1e-10) const;

 private:
  int n_qubits_ = 0;
  std::vector<Amplitude> amplitudes_;
};

/// out = h * in, term by term via index permutation and phase.
void apply_into(const PauliSum& h, std::span<const Amplitude> in, std::span<Amplitude> out);

/// H|psi>, not normalized.
Wavefunction apply(const PauliSum& h, const Wavefunction& psi);

/// <psi|H|psi> for a normalized state.
double expectation(const PauliSum& h, const Wavefunction& psi);

/// <psi|H^2|psi> - <psi|H|psi>^2, clamped at zero.
double variance(const PauliSum& h, const Wavefunction& psi);

struct EigensolverOptions {
  int krylov_dim = 30;
  int max_restarts = 500;
  double tolerance = 1e-8;
  /// Weight of the seeded random perturbation added to the start vector.
  double perturbation = 1e-2;
  std::uint64_t seed = 20210217;
  int qubit_cap = kDefaultQubitCap;
};

struct GroundState {
  double energy = 0.0;
  Wavefunction state;
  double residual = 0.0;
  int matvecs = 0;
};

/// Lowest eigenpair of h using only apply(). The start vector is `start`
/// (or |0...0> when null) plus a fixed-seed perturbation over all basis
/// states. Throws ConvergenceError when the residual stays above tolerance.
GroundState ground_state(const PauliSum& h, const EigensolverOptions& options = {},
                         const Wavefunction* start = nullptr);

/// Basis state occupying the n_electrons lowest spin-orbitals, encoded by `m`.
Wavefunction hf_state(int n_qubits, int n_electrons, Mapping m);

enum class StateKind { kExactGround, kHartreeFock, kSupplied };

std::string to_string(StateKind k);

/// Optimal shot allocation over measurable fragments.
///
/// shot_fractions[a] = eps^2 K_a = sqrt(Var_a) * sum_b sqrt(Var_b) and
/// total_eps2K = (sum_a sqrt(Var_a))^2, so both are independent of epsilon.
struct MeasurementReport {
  std::vector<double> fragment_variances;
  std::vector<double> shot_fractions;
  double total_eps2K = 0.0;
  double epsilon = 1.0;
  std::string grouping_method;
  StateKind state_kind = StateKind::kSupplied;

  /// K_a for the stored epsilon.
  std::vector<double> shots() const;
  /// K = total_eps2K / epsilon^2.
  double total_shots() const { return total_eps2K / (epsilon * epsilon); }
};

MeasurementReport allocate(std::span<const double> variances, double epsilon,
                           std::string method = {}, StateKind kind = StateKind::kSupplied);

/// Variances of every group on psi, then allocate(). Throws ValidationError
/// for an unnormalized state or non-positive epsilon.
MeasurementReport allocate(const std::vector<FragmentGroup>& groups, const Wavefunction& psi,
                           double epsilon, std::string method = {},
                           StateKind kind = StateKind::kSupplied);

}  // namespace csa
