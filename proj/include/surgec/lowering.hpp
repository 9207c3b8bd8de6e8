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
#include <vector>

#include "surgec/lli.hpp"
#include "surgec/qasm.hpp"

namespace surgec {

/// Numbers emitted instructions, hands out fresh ancilla patch ids and wraps
/// instructions in the active IF conditions.
class LliEmitter {
 public:
  using Sink = std::function<void(const Instruction &)>;

  LliEmitter(Sink sink, PatchId first_ancilla);

  /// Returns the sequence number of the emitted instruction.
  std::uint64_t emit(Instruction instr);
  PatchId fresh_ancilla() { return next_ancilla_++; }
  std::uint64_t count() const { return count_; }
  PatchId next_ancilla() const { return next_ancilla_; }

  class Scope {
   public:
    Scope(LliEmitter &e, OutcomeRef condition) : e_(e) {
      e_.conditions_.push_back(condition);
    }
    ~Scope() { e_.conditions_.pop_back(); }
    Scope(const Scope &) = delete;
    Scope &operator=(const Scope &) = delete;

   private:
    LliEmitter &e_;
  };

 private:
  Sink sink_;
  PatchId next_ancilla_;
  std::uint64_t count_ = 0;
  std::vector<OutcomeRef> conditions_;
};

struct LoweringOptions {
  // Restore the boundary orientation after every transversal Hadamard.
  bool boundary_rotate = true;
};

// Templates. Each is checked against its target unitary over all outcome
// branches by the tests.
//
// CNOT c->t with ancilla a:
//   INIT a +; MBM +Zc,Za (s1); MBM +Xa,Xt (s2); MEAS a Z (s3);
//   IF s2 1 PAULI c Z; IF s1 1 PAULI t X; IF s3 1 PAULI t X
//
// P(k pi/8), k odd, s = sign(k) after reducing k into (-4, 4]:
//   MAGIC m; MBM (s P)*Zm (b); MEAS m X (x); then on each outcome of b the
//   residual P((k - s b) pi/8) (a Clifford, lowered recursively inside IF),
//   and IF x 1 Pauli P.
//
// P(pi/4): a single-qubit Z is the S gate, a single-qubit X is H S H,
// anything else consumes a |Y+> ancilla:
//   INIT a +; S a; MBM (s P)*Za (b); MEAS a X (x); IF b 1 P; IF x 1 P

void lower_letter(LliEmitter &e, char letter, QubitId q,
                  const LoweringOptions &opt);
void lower_rotation(LliEmitter &e, const PauliRotation &r,
                    const LoweringOptions &opt);
void lower_cnot(LliEmitter &e, QubitId control, QubitId target);
/// Applies the Pauli product (sign is a global phase). Y = X and Z.
void lower_pauli(LliEmitter &e, const PauliProduct &p);
/// Measures a signed observable; single-qubit Y goes through S^dagger.
void lower_measurement(LliEmitter &e, const PauliProduct &observable);
/// H X Z S Sdg T Tdg CX.
void lower_gate(LliEmitter &e, const Gate &g, const LoweringOptions &opt);

}  // namespace surgec
