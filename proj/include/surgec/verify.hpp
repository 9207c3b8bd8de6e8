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

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "surgec/compiler.hpp"
#include "surgec/layout.hpp"
#include "surgec/ltsvs.hpp"
#include "surgec/slicer.hpp"

namespace surgec {

// ------------------------------------------------------------- snapshots

enum class SnapshotWhen {
  Never,
  EveryInstruction,
  EverySlice,  // needs a layout; magic states are available instantly
};

struct SnapshotPolicy {
  SnapshotWhen when = SnapshotWhen::EveryInstruction;
  bool amplitudes = false;
  const Layout *layout = nullptr;
};

struct GroupSnapshot {
  std::vector<PatchId> members;
  std::optional<StateTag> tag;
  std::vector<Amplitude> amplitudes;  // empty unless requested
};

struct Snapshot {
  std::uint64_t index = 0;  // slice or instruction number
  std::vector<GroupSnapshot> groups;
};

using SnapshotVisitor = std::function<void(const Snapshot &)>;

struct VerifiedRunResult {
  std::vector<std::pair<std::uint64_t, int>> outcomes;  // (seq, bit)
  std::uint64_t instructions = 0;
  std::uint64_t snapshots = 0;
  std::size_t largest_group = 0;
};

Snapshot take_snapshot(const LazyState &state, std::uint64_t index, bool amplitudes);
std::string snapshot_to_json(const Snapshot &snap);

/// Replays a stream through the lazy simulator with seeded outcomes and
/// reports a snapshot at every instruction or slice boundary.
VerifiedRunResult verified_run(const LliSource &source, std::uint64_t seed,
                               const SnapshotPolicy &policy,
                               const SnapshotVisitor &visitor,
                               const LtsvsConfig &config = {});

// ---------------------------------------------------------------- branches

struct Branch {
  std::vector<int> bits;  // chosen outcomes in stream order
  double probability = 0;
  const LazyState *state = nullptr;
};

/// Runs every measurement outcome combination with non-zero probability.
/// Conditionals whose condition is already decided do not fork.
void for_each_branch(const std::vector<Instruction> &stream, const LtsvsConfig &config,
                     const std::function<void(const Branch &)> &visit);

/// Same, resuming from `start`, which has already run stream[0, first).
/// Branch probabilities include the probability of reaching `start`.
void for_each_branch(const LazyState &start, std::size_t first,
                     const std::vector<Instruction> &stream,
                     const std::function<void(const Branch &)> &visit);

// ----------------------------------------------------------- verification

struct VerifyOptions {
  CompilerOptions compiler;
  std::uint64_t seed = 1;
  // Branches are enumerated when the stream has at most this many
  // measurements, and sampled `samples` times otherwise.
  std::size_t max_enumerated_measurements = 12;
  std::size_t samples = 32;
  LtsvsConfig ltsvs;
};

struct VerifyReport {
  bool pass = false;
  double trace_distance = 0;  // worst branch
  double tolerance = 0;
  std::uint64_t branches = 0;
  bool exhaustive = false;
  std::uint64_t lli = 0;
  std::uint64_t approximated_rotations = 0;
  std::string message;
};

/// Compiles the circuit, simulates the LLI with the lazy simulator and
/// compares the final data state of every checked branch against a dense
/// simulation of the circuit. Tolerance is 4 * N * epsilon + 1e-6 for N
/// approximated rotations. Throws Error(BudgetExceeded) when the register
/// does not fit the simulator budget.
VerifyReport verify_circuit(const Circuit &circuit, const VerifyOptions &options);

/// Same check against a given LLI stream (e.g. one read from a file).
VerifyReport verify_stream(const Circuit &circuit, const std::vector<Instruction> &stream,
                           std::uint64_t approximated_rotations,
                           const VerifyOptions &options);

std::string to_string(const VerifyReport &report);

}  // namespace surgec
