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
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "surgec/pauli.hpp"

namespace surgec {

// Logical lattice instructions. Text form, one per line:
//
//   INIT <p> 0|+        MEAS <p> X|Z        MBM <sign><op><p>,<op><p>[,...]
//   PAULI <p> X|Z       H <p>               ROT <p>
//   S <p>               MAGIC <p>           IF <seq> <bit> <instruction>
//
// `seq` is the 0-based position of a measuring instruction in the stream,
// `bit` is the outcome that triggers the body (0 = +1 eigenvalue, 1 = -1).

using PatchId = std::uint64_t;

enum class InitState : std::uint8_t { Zero, Plus };
enum class Basis : std::uint8_t { X, Z };

inline Pauli to_pauli(Basis b) { return b == Basis::X ? Pauli::X : Pauli::Z; }

struct Init {
  PatchId patch;
  InitState state;
  bool operator==(const Init &) const = default;
};

struct MeasureSingle {
  PatchId patch;
  Basis basis;
  bool operator==(const MeasureSingle &) const = default;
};

struct MultiBodyMeasure {
  struct Operand {
    PatchId patch;
    Pauli op;
    bool operator==(const Operand &) const = default;
  };
  std::vector<Operand> operands;
  int sign = 1;
  bool operator==(const MultiBodyMeasure &) const = default;
};

struct TransversalPauli {
  PatchId patch;
  Basis op;
  bool operator==(const TransversalPauli &) const = default;
};

struct TransversalHadamard {
  PatchId patch;
  bool operator==(const TransversalHadamard &) const = default;
};

struct BoundaryRotate {
  PatchId patch;
  bool operator==(const BoundaryRotate &) const = default;
};

struct SGate {
  PatchId patch;
  bool operator==(const SGate &) const = default;
};

struct RequestMagicState {
  PatchId patch;
  bool operator==(const RequestMagicState &) const = default;
};

struct OutcomeRef {
  std::uint64_t seq;
  int bit;
  bool operator==(const OutcomeRef &) const = default;
};

struct Instruction;

struct ConditionalCorrection {
  OutcomeRef condition;
  std::shared_ptr<const Instruction> body;
  bool operator==(const ConditionalCorrection &other) const;
};

struct Instruction {
  using Variant =
      std::variant<Init, MeasureSingle, MultiBodyMeasure, TransversalPauli,
                   TransversalHadamard, BoundaryRotate, SGate,
                   RequestMagicState, ConditionalCorrection>;
  Variant op;

  template <typename T>
  Instruction(T value) : op(std::move(value)) {}  // NOLINT(implicit)

  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(op);
  }
  template <typename T>
  const T &as() const {
    return std::get<T>(op);
  }

  bool operator==(const Instruction &) const = default;
};

Instruction make_conditional(OutcomeRef condition, Instruction body);

/// True for instructions that produce an outcome bit.
bool is_measurement(const Instruction &instr);

/// Patches touched by the instruction (the body's, for conditionals).
std::vector<PatchId> patches_of(const Instruction &instr);

/// The instruction without any IF wrappers.
const Instruction &innermost(const Instruction &instr);

/// Throws InvalidArgument when a payload breaks the instruction invariants
/// (e.g. a multi-body measurement on fewer than two distinct patches).
void validate(const Instruction &instr);

std::string serialize_lli(const Instruction &instr);

/// Parses one line. Blank and comment-only lines return nullopt.
std::optional<Instruction> parse_lli(std::string_view line,
                                     std::size_t line_number = 1);

/// Pull-based reader over a text stream.
class LliReader {
 public:
  explicit LliReader(std::istream &in) : in_(in) {}

  std::optional<Instruction> next();
  std::size_t line() const { return line_; }
  /// Number of instructions returned so far; the seq of the next one.
  std::uint64_t count() const { return count_; }

 private:
  std::istream &in_;
  std::string buffer_;
  std::size_t line_ = 0;
  std::uint64_t count_ = 0;
};

}  // namespace surgec
