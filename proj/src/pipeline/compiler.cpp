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

#include "surgec/compiler.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "surgec/error.hpp"
#include "surgec/litinski.hpp"

namespace surgec {

Compiler::Compiler(CompilerOptions options, Sink sink)
    : options_(std::move(options)),
      sink_(std::move(sink)),
      approximator_(options_.approximation) {}

Compiler::~Compiler() = default;

void Compiler::begin(std::uint64_t num_qubits) {
  num_qubits_ = num_qubits;
  stats_ = {};
  stats_.qubits = num_qubits;
  litinski_blocks_.clear();
  emitter_ = std::make_unique<LliEmitter>(
      [this](const Instruction &instr) {
        ++stats_.lli;
        if (instr.is<ConditionalCorrection>()) ++stats_.conditionals;
        if (innermost(instr).is<RequestMagicState>()) ++stats_.magic_states;
        sink_(instr);
      },
      num_qubits);
  if (options_.peephole) {
    peephole_ = std::make_unique<Peephole>(
        [this](const Gate &g) { after_peephole(g); });
  } else {
    peephole_.reset();
  }
}

void Compiler::add(const Gate &g) {
  if (!emitter_) throw Error(ErrorKind::Internal, "Compiler::add before begin");
  ++stats_.gates_in;
  for (QubitId q : g.qubits) {
    if (q >= num_qubits_) {
      throw Error(ErrorKind::InvalidArgument,
                  "qubit " + std::to_string(q) + " out of range");
    }
  }
  for (const Gate &d : decompose_controlled(g)) {
    if (peephole_) {
      peephole_->push(d);
    } else {
      after_peephole(d);
    }
  }
}

void Compiler::lower_letters(const std::string &raw, QubitId q, bool x_axis) {
  const std::string letters =
      x_axis ? simplify_letters("H" + raw + "H") : raw;
  if (options_.litinski) {
    auto blocks = compress_to_pauli_rotations(letters, q);
    std::reverse(blocks.begin(), blocks.end());
    for (auto &b : blocks) litinski_blocks_.push_back(std::move(b));
    return;
  }
  if (options_.mode == LoweringMode::Direct) {
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      lower_letter(*emitter_, *it, q, options_.lowering);
    }
    return;
  }
  const auto blocks = compress_to_pauli_rotations(letters, q);
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
    if (const auto *r = std::get_if<PauliRotation>(&*it)) {
      lower_rotation(*emitter_, *r, options_.lowering);
    } else {
      lower_letter(*emitter_, std::get<ResidualClifford>(*it).gate, q,
                   options_.lowering);
    }
  }
}

void Compiler::after_peephole(const Gate &g) {
  ++stats_.gates_after_peephole;
  const QubitId q = g.qubits.at(0);
  if (g.kind == GateKind::RZ || g.kind == GateKind::RX) {
    // rz(a) = Z(a/2) up to phase.
    const ExactAngle angle = g.angle->halved();
    if (classify(angle) == AngleClass::Arbitrary) ++stats_.approximated_rotations;
    lower_letters(approximator_.approximate(angle), q, g.kind == GateKind::RX);
    return;
  }
  if (options_.litinski) {
    for (auto &r : gate_rotations(g)) litinski_blocks_.emplace_back(std::move(r));
    return;
  }
  lower_gate(*emitter_, g, options_.lowering);
}

void Compiler::finish() {
  if (!emitter_) throw Error(ErrorKind::Internal, "Compiler::finish before begin");
  if (peephole_) peephole_->flush();
  if (options_.litinski) {
    std::vector<PauliProduct> measurements;
    for (QubitId q = 0; q < num_qubits_; ++q) {
      measurements.push_back(PauliProduct::single(q, Pauli::Z));
    }
    const LitinskiResult lt = litinski_transform(litinski_blocks_, measurements);
    litinski_blocks_.clear();
    for (const auto &r : lt.rotations) {
      lower_rotation(*emitter_, r, options_.lowering);
    }
    // Multi-patch observables first: a single-patch measurement destroys its
    // patch, and all observables commute.
    for (const auto &m : lt.measurements) {
      if (m.weight() >= 2) lower_measurement(*emitter_, m);
    }
    for (const auto &m : lt.measurements) {
      if (m.weight() == 1) lower_measurement(*emitter_, m);
    }
  }
  stats_.patches = emitter_->next_ancilla();
}

CompileStats compile_stream(std::istream &in, std::ostream &out,
                            const CompilerOptions &options,
                            const QasmOptions &qasm) {
  QasmReader reader(in, qasm);
  std::string line;
  Compiler compiler(options, [&](const Instruction &instr) {
    line = serialize_lli(instr);
    line += '\n';
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
  });
  compiler.begin(reader.num_qubits());
  while (auto g = reader.next()) compiler.add(*g);
  compiler.finish();
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write error on LLI output");
  return compiler.stats();
}

std::vector<Instruction> compile_circuit(const Circuit &circuit,
                                         const CompilerOptions &options,
                                         CompileStats *stats) {
  std::vector<Instruction> out;
  Compiler compiler(options, [&](const Instruction &i) { out.push_back(i); });
  compiler.begin(circuit.num_qubits);
  for (const Gate &g : circuit.gates) compiler.add(g);
  compiler.finish();
  if (stats) *stats = compiler.stats();
  return out;
}

std::uint64_t count_sequence_lli(const std::string &letters, LoweringMode mode,
                                 bool count_conditionals) {
  std::uint64_t n = 0;
  LliEmitter e(
      [&](const Instruction &i) {
        if (count_conditionals || !i.is<ConditionalCorrection>()) ++n;
      },
      1);
  const LoweringOptions opt;
  if (mode == LoweringMode::Direct) {
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      lower_letter(e, *it, 0, opt);
    }
    return n;
  }
  const auto blocks = compress_to_pauli_rotations(letters, 0);
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
    if (const auto *r = std::get_if<PauliRotation>(&*it)) {
      lower_rotation(e, *r, opt);
    } else {
      lower_letter(e, std::get<ResidualClifford>(*it).gate, 0, opt);
    }
  }
  return n;
}

}  // namespace surgec
