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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "surgec/approximation.hpp"
#include "surgec/blocks.hpp"
#include "surgec/decompose.hpp"
#include "surgec/lowering.hpp"

namespace surgec {

enum class LoweringMode { Direct, Compressed };

struct CompilerOptions {
  LoweringMode mode = LoweringMode::Direct;
  // Outcome-only semantics: Z-measure every qubit at the end, push all
  // Cliffords into the measurements and drop them. Buffers the circuit.
  bool litinski = false;
  bool peephole = true;
  LoweringOptions lowering;
  ApproximatorConfig approximation;
};

struct CompileStats {
  std::uint64_t qubits = 0;
  std::uint64_t gates_in = 0;
  std::uint64_t gates_after_peephole = 0;
  std::uint64_t approximated_rotations = 0;
  std::uint64_t lli = 0;
  std::uint64_t magic_states = 0;
  std::uint64_t conditionals = 0;
  std::uint64_t patches = 0;  // data plus ancilla ids handed out
};

/// Streams gates to LLI. Gates pass through controlled-gate decomposition,
/// the peephole, Clifford+T approximation, optional compression, and
/// lowering, in that order; LLI reach the sink as soon as they exist (except
/// in Litinski mode, which needs the whole circuit).
class Compiler {
 public:
  using Sink = std::function<void(const Instruction &)>;

  Compiler(CompilerOptions options, Sink sink);
  ~Compiler();

  void begin(std::uint64_t num_qubits);
  void add(const Gate &g);
  void finish();

  const CompileStats &stats() const { return stats_; }

 private:
  void after_peephole(const Gate &g);
  void lower_letters(const std::string &letters, QubitId q, bool x_axis);

  CompilerOptions options_;
  Sink sink_;
  Approximator approximator_;
  std::unique_ptr<LliEmitter> emitter_;
  std::unique_ptr<Peephole> peephole_;
  std::vector<RotationBlock> litinski_blocks_;
  std::uint64_t num_qubits_ = 0;
  CompileStats stats_;
};

/// Reads OpenQASM from `in`, writes LLI text lines to `out`.
CompileStats compile_stream(std::istream &in, std::ostream &out,
                            const CompilerOptions &options,
                            const QasmOptions &qasm = {});

std::vector<Instruction> compile_circuit(const Circuit &circuit,
                                         const CompilerOptions &options,
                                         CompileStats *stats = nullptr);

/// Lowers a letter sequence acting on qubit 0 of a one-qubit register; used to
/// compare direct and compressed costs per rotation.
std::uint64_t count_sequence_lli(const std::string &letters, LoweringMode mode,
                                 bool count_conditionals = true);

}  // namespace surgec
