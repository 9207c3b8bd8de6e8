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

#include "surgec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "surgec/dense.hpp"
#include "surgec/error.hpp"

namespace surgec {

Snapshot take_snapshot(const LazyState &state, std::uint64_t index, bool amplitudes) {
  Snapshot snap;
  snap.index = index;
  for (const StateGroup &g : state.groups()) {
    GroupSnapshot gs;
    gs.members = g.members;
    gs.tag = recognize_state(g);
    if (amplitudes) gs.amplitudes = g.amplitudes;
    snap.groups.push_back(std::move(gs));
  }
  // Stable order independent of internal group bookkeeping.
  std::sort(snap.groups.begin(), snap.groups.end(),
            [](const GroupSnapshot &a, const GroupSnapshot &b) {
              return *std::min_element(a.members.begin(), a.members.end()) <
                     *std::min_element(b.members.begin(), b.members.end());
            });
  return snap;
}

std::string snapshot_to_json(const Snapshot &snap) {
  std::ostringstream out;
  out.precision(17);
  out << "{\"index\":" << snap.index << ",\"groups\":[";
  for (std::size_t g = 0; g < snap.groups.size(); ++g) {
    const GroupSnapshot &gs = snap.groups[g];
    if (g) out << ',';
    out << "{\"members\":[";
    for (std::size_t k = 0; k < gs.members.size(); ++k) {
      if (k) out << ',';
      out << gs.members[k];
    }
    out << "],\"tag\":";
    if (gs.tag) {
      out << '"' << to_string(*gs.tag) << '"';
    } else {
      out << "null";
    }
    if (!gs.amplitudes.empty()) {
      out << ",\"amplitudes\":[";
      for (std::size_t k = 0; k < gs.amplitudes.size(); ++k) {
        if (k) out << ',';
        out << '[' << gs.amplitudes[k].real() << ',' << gs.amplitudes[k].imag() << ']';
      }
      out << ']';
    }
    out << '}';
  }
  out << "]}";
  return out.str();
}

VerifiedRunResult verified_run(const LliSource &source, std::uint64_t seed,
                               const SnapshotPolicy &policy,
                               const SnapshotVisitor &visitor,
                               const LtsvsConfig &config) {
  VerifiedRunResult result;
  LazyState state(config);
  const OutcomeChooser choose = seeded_chooser(seed);
  auto step = [&](std::uint64_t seq, const Instruction &instr) {
    ++result.instructions;
    if (auto bit = state.apply(seq, instr, choose)) result.outcomes.emplace_back(seq, *bit);
    result.largest_group = std::max(result.largest_group, state.largest_group());
  };
  auto emit = [&](std::uint64_t index) {
    ++result.snapshots;
    if (visitor) visitor(take_snapshot(state, index, policy.amplitudes));
  };

  if (policy.when == SnapshotWhen::EverySlice) {
    if (!policy.layout) {
      throw Error(ErrorKind::InvalidArgument, "slice snapshots need a layout");
    }
    SlicerConfig sc;
    sc.instant_magic = true;
    run_stream(
        source, *policy.layout,
        [&](const Slice &slice) {
          for (const SliceEvent &e : slice.events) step(e.seq, e.instr);
          emit(slice.index);
        },
        sc);
    return result;
  }
  std::uint64_t seq = 0;
  while (auto instr = source()) {
    step(seq, *instr);
    if (policy.when == SnapshotWhen::EveryInstruction) emit(seq);
    ++seq;
  }
  return result;
}

namespace {

bool forks(const LazyState &state, const Instruction &instr) {
  const Instruction *cur = &instr;
  while (cur->is<ConditionalCorrection>()) {
    const auto &c = cur->as<ConditionalCorrection>();
    const auto o = state.outcome(c.condition.seq);
    if (!o || *o != c.condition.bit) return false;
    cur = c.body.get();
  }
  return is_measurement(*cur);
}

void branch_from(LazyState state, std::size_t i, const std::vector<Instruction> &stream,
                 std::vector<int> &bits, const std::function<void(const Branch &)> &visit) {
  const OutcomeChooser unused = [](std::uint64_t, double) { return 0; };
  for (; i < stream.size(); ++i) {
    if (forks(state, stream[i])) {
      for (int b : {0, 1}) {
        LazyState copy = state;
        copy.apply(i, stream[i], [b](std::uint64_t, double) { return b; });
        if (copy.impossible()) continue;
        bits.push_back(b);
        branch_from(std::move(copy), i + 1, stream, bits, visit);
        bits.pop_back();
      }
      return;
    }
    state.apply(i, stream[i], unused);
  }
  visit(Branch{bits, state.probability(), &state});
}

}  // namespace

void for_each_branch(const std::vector<Instruction> &stream, const LtsvsConfig &config,
                     const std::function<void(const Branch &)> &visit) {
  std::vector<int> bits;
  branch_from(LazyState(config), 0, stream, bits, visit);
}

void for_each_branch(const LazyState &start, std::size_t first,
                     const std::vector<Instruction> &stream,
                     const std::function<void(const Branch &)> &visit) {
  std::vector<int> bits;
  branch_from(start, first, stream, bits, visit);
}

namespace {

// Distance of the data register from the ideal state; 1 when the data is
// still entangled with a live ancilla or was measured.
double branch_distance(const LazyState &state, std::uint64_t n,
                       const std::vector<Amplitude> &ideal, std::string &why) {
  LazyState copy = state;
  std::vector<PatchId> order;
  for (PatchId q = 0; q < n; ++q) order.push_back(q);
  try {
    for (PatchId q : order) {
      if (!copy.live(q)) copy.materialize(q);
    }
    return trace_distance(copy.amplitudes(order), ideal);
  } catch (const Error &e) {
    why = e.what();
    return 1.0;
  }
}

}  // namespace

VerifyReport verify_stream(const Circuit &circuit, const std::vector<Instruction> &stream,
                           std::uint64_t approximated_rotations,
                           const VerifyOptions &options) {
  const std::uint64_t n = circuit.num_qubits;
  if (n >= 63 || (std::size_t{1} << n) > options.ltsvs.max_amplitudes) {
    throw Error(ErrorKind::BudgetExceeded,
                "circuit has " + std::to_string(n) + " qubits; the simulator budget is " +
                    std::to_string(options.ltsvs.max_amplitudes) + " amplitudes");
  }
  const std::vector<Amplitude> ideal = simulate_circuit(circuit);
  LtsvsConfig config = options.ltsvs;
  config.implicit_patches = static_cast<PatchId>(n);

  VerifyReport report;
  report.lli = stream.size();
  report.approximated_rotations = approximated_rotations;
  report.tolerance = 4.0 * static_cast<double>(approximated_rotations) *
                         options.compiler.approximation.epsilon +
                     1e-6;
  std::string why;
  auto consider = [&](const LazyState &state) {
    ++report.branches;
    std::string w;
    const double d = branch_distance(state, n, ideal, w);
    if (d > report.trace_distance) {
      report.trace_distance = d;
      if (!w.empty()) why = w;
    }
  };

  std::size_t measurements = 0;
  for (const Instruction &instr : stream) measurements += is_measurement(innermost(instr));
  if (measurements <= options.max_enumerated_measurements) {
    report.exhaustive = true;
    for_each_branch(stream, config, [&](const Branch &b) { consider(*b.state); });
  } else {
    for (std::size_t k = 0; k < options.samples; ++k) {
      LazyState state(config);
      const OutcomeChooser choose = seeded_chooser(options.seed + k);
      for (std::size_t i = 0; i < stream.size(); ++i) state.apply(i, stream[i], choose);
      consider(state);
    }
  }
  report.pass = report.trace_distance <= report.tolerance;
  report.message = why;
  return report;
}

VerifyReport verify_circuit(const Circuit &circuit, const VerifyOptions &options) {
  if (options.compiler.litinski) {
    throw Error(ErrorKind::InvalidArgument,
                "verify compares final states; Litinski mode measures them away");
  }
  if (circuit.num_qubits >= 63 ||
      (std::size_t{1} << circuit.num_qubits) > options.ltsvs.max_amplitudes) {
    throw Error(ErrorKind::BudgetExceeded,
                "circuit has " + std::to_string(circuit.num_qubits) +
                    " qubits; the simulator budget is " +
                    std::to_string(options.ltsvs.max_amplitudes) + " amplitudes");
  }
  CompileStats stats;
  const std::vector<Instruction> stream = compile_circuit(circuit, options.compiler, &stats);
  return verify_stream(circuit, stream, stats.approximated_rotations, options);
}

std::string to_string(const VerifyReport &r) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%s trace_distance=%.3e tolerance=%.3e branches=%llu%s lli=%llu "
                "approximated_rotations=%llu",
                r.pass ? "PASS" : "FAIL", r.trace_distance, r.tolerance,
                static_cast<unsigned long long>(r.branches),
                r.exhaustive ? " (all)" : " (sampled)",
                static_cast<unsigned long long>(r.lli),
                static_cast<unsigned long long>(r.approximated_rotations));
  std::string s = buf;
  if (!r.message.empty()) s += " note: " + r.message;
  return s;
}

}  // namespace surgec
