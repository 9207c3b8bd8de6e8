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

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "surgec/lli.hpp"

namespace surgec {

using Amplitude = std::complex<double>;

/// Well-known single-patch states, recognised up to global phase.
enum class StateTag { Zero, One, Plus, Minus, Magic, YPlus, YMinus };

const char *to_string(StateTag tag);

/// Amplitudes of a set of patches. Bit k of an amplitude index is the value
/// of members[k].
struct StateGroup {
  std::vector<PatchId> members;
  std::vector<Amplitude> amplitudes;

  double norm() const;
};

/// Tag of a singleton group whose fidelity with the canonical state is at
/// least 1 - 1e-9; nullopt for anything else, including larger groups.
std::optional<StateTag> recognize_state(const StateGroup &group);

/// Decides a measurement: given the probability of bit 0 (eigenvalue +1),
/// returns the bit. `seq` is the measuring instruction's sequence number.
using OutcomeChooser = std::function<int(std::uint64_t seq, double p0)>;

/// Pseudorandom outcomes that depend only on (seed, seq), so two simulators
/// fed the same stream draw identical bits regardless of call order.
OutcomeChooser seeded_chooser(std::uint64_t seed);

/// Outcome of the n-th measurement is bits[n]; later ones are 0.
OutcomeChooser fixed_chooser(std::vector<int> bits);

struct LtsvsConfig {
  // Largest group a merge may create, in amplitudes.
  std::size_t max_amplitudes = std::size_t{1} << 22;
  // Patch ids below this start live in |0> without an INIT (data patches).
  PatchId implicit_patches = 0;
  // Outcomes remembered for conditionals.
  std::size_t outcome_window = std::size_t{1} << 16;
};

/// Lazily tensored state vector. Every live patch belongs to exactly one
/// group; groups are tensored together only when a multi-body measurement
/// spans them, and a patch leaves its group when measured. Fresh patches
/// always start as singletons.
class LazyState {
 public:
  explicit LazyState(LtsvsConfig config = {});

  /// Applies one instruction. Returns the outcome bit of a measurement that
  /// executed (a conditional whose condition failed returns nullopt).
  std::optional<int> apply(std::uint64_t seq, const Instruction &instr,
                           const OutcomeChooser &choose);

  const std::vector<StateGroup> &groups() const { return groups_; }
  /// Brings an untouched implicit patch to life as a |0> singleton so that
  /// it can be inspected. Throws for unknown or measured patches.
  void materialize(PatchId id) { ensure(id, 0); }
  bool live(PatchId id) const;
  const StateGroup &group_of(PatchId id) const;
  std::optional<int> outcome(std::uint64_t seq) const;

  /// Product of the probabilities of all chosen outcomes.
  double probability() const { return probability_; }
  /// True once a chosen outcome had probability below 1e-14; the state is
  /// then left unnormalised and further instructions are ignored.
  bool impossible() const { return impossible_; }
  std::uint64_t measurements() const { return measurements_; }
  std::size_t largest_group() const;

  /// Joint amplitudes of `order` (bit k = order[k]). The groups touched must
  /// not contain patches outside `order`.
  std::vector<Amplitude> amplitudes(const std::vector<PatchId> &order) const;

  /// Throws Error(Internal) if the partition or norms are broken.
  void check_invariants() const;

 private:
  std::size_t ensure(PatchId id, std::uint64_t seq);
  std::size_t merge(std::size_t a, std::size_t b, std::uint64_t seq);
  void drop_group(std::size_t g);
  void add_singleton(PatchId id, Amplitude a0, Amplitude a1);
  void apply_1q(PatchId id, const Amplitude u[4], std::uint64_t seq);
  int measure_pauli(std::uint64_t seq, const MultiBodyMeasure &m,
                    const OutcomeChooser &choose);
  int measure_single(std::uint64_t seq, const MeasureSingle &m,
                     const OutcomeChooser &choose);
  int decide(std::uint64_t seq, double p0, const OutcomeChooser &choose);
  void record(std::uint64_t seq, int bit);

  LtsvsConfig config_;
  std::vector<StateGroup> groups_;
  std::unordered_map<PatchId, std::size_t> where_;
  std::vector<std::uint8_t> implicit_used_;
  std::map<std::uint64_t, int> outcomes_;
  double probability_ = 1.0;
  bool impossible_ = false;
  std::uint64_t measurements_ = 0;
};

}  // namespace surgec
