// Copyright 2026 The surgec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "surgec/ltsvs.hpp"
#include "surgec/qasm.hpp"

namespace surgec {

using Matrix2 = std::array<Amplitude, 4>;  // row-major

/// Full-register state vector; qubit k is bit k of the index. The reference
/// against which the lazy simulator and the compiler are checked.
class DenseState {
 public:
  explicit DenseState(std::size_t num_qubits);

  std::size_t num_qubits() const { return n_; }
  const std::vector<Amplitude> &amplitudes() const { return amps_; }
  std::vector<Amplitude> &amplitudes() { return amps_; }

  void apply(std::size_t q, const Matrix2 &u);
  void apply_controlled(std::size_t control, std::size_t target, const Matrix2 &u);

  /// Gate semantics of the OpenQASM frontend: rz(a) = exp(-i a Z / 2),
  /// rx(a) = exp(-i a X / 2), crz(a) = controlled phase diag(1, e^{i a}) and
  /// crx(a) the same conjugated by H on the target.
  void apply_gate(const Gate &g);

  /// Probability that measuring sign * P gives +1 (bit 0).
  double probability_zero(const std::vector<std::pair<std::size_t, Pauli>> &p,
                          int sign) const;
  /// Projects onto the eigenspace of sign * P selected by `bit` and
  /// renormalises. Returns the probability of that outcome.
  double project(const std::vector<std::pair<std::size_t, Pauli>> &p, int sign,
                 int bit);

 private:
  void to_z_basis(const std::vector<std::pair<std::size_t, Pauli>> &p, bool inverse);

  std::size_t n_;
  std::vector<Amplitude> amps_;
};

Matrix2 gate_matrix(GateKind kind, double radians = 0);

/// Dense simulation of a whole circuit from |0...0>.
std::vector<Amplitude> simulate_circuit(const Circuit &circuit);

/// LLI interpreter on a DenseState with one qubit per listed patch id. A
/// measured patch is reset to |0> so it can be initialised again; ids below
/// `implicit_patches` start live.
class DenseLliSimulator {
 public:
  DenseLliSimulator(std::vector<PatchId> patches, PatchId implicit_patches = 0);

  std::optional<int> apply(std::uint64_t seq, const Instruction &instr,
                           const OutcomeChooser &choose);

  bool live(PatchId id) const;
  std::vector<PatchId> live_patches() const;
  /// Amplitudes of `order` with every other qubit projected on |0>.
  std::vector<Amplitude> amplitudes(const std::vector<PatchId> &order) const;
  const DenseState &state() const { return state_; }

 private:
  std::size_t qubit(PatchId id, std::uint64_t seq) const;

  std::map<PatchId, std::size_t> index_;
  std::vector<std::uint8_t> live_;
  DenseState state_;
  std::map<std::uint64_t, int> outcomes_;
};

/// max over global phases of |<a|b>|, i.e. the fidelity amplitude.
double overlap(const std::vector<Amplitude> &a, const std::vector<Amplitude> &b);
/// min over phi of || a - e^{i phi} b ||.
double phase_distance(const std::vector<Amplitude> &a, const std::vector<Amplitude> &b);
/// Trace distance of two pure states, sqrt(1 - |<a|b>|^2).
double trace_distance(const std::vector<Amplitude> &a, const std::vector<Amplitude> &b);

}  // namespace surgec
