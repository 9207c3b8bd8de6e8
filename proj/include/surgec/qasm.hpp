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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "surgec/exact_angle.hpp"
#include "surgec/pauli.hpp"

namespace surgec {

enum class GateKind : std::uint8_t {
  H, X, Z, S, Sdg, T, Tdg, CX, CZ, RX, RZ, CRX, CRZ
};

const char *gate_name(GateKind kind);
bool has_angle(GateKind kind);
int arity(GateKind kind);

// `rz(a)` is diag(1, e^{ia}); `crz(a)` is the controlled phase
// diag(1, 1, 1, e^{ia}). `rx` and `crx` are the same conjugated by H on the
// (target) qubit. For two-qubit kinds qubits[0] is the control.
struct Gate {
  GateKind kind;
  std::vector<QubitId> qubits;
  std::optional<ExactAngle> angle;

  bool operator==(const Gate &) const = default;
};

Gate make_gate(GateKind kind, std::vector<QubitId> qubits,
               std::optional<ExactAngle> angle = std::nullopt);

struct Circuit {
  std::uint64_t num_qubits = 0;
  std::vector<Gate> gates;

  bool operator==(const Circuit &) const = default;
};

struct QasmOptions {
  // `cx a,b` names the target first (a dialect quirk); default is control
  // first as in standard OpenQASM.
  bool target_first_cx = false;
};

/// Incremental parser: reads one statement at a time, so arbitrarily long
/// programs can be compiled without holding them in memory.
class QasmReader {
 public:
  explicit QasmReader(std::istream &in, QasmOptions options = {});

  /// Consumes statements up to and including the qreg declaration.
  std::uint64_t num_qubits();
  std::optional<Gate> next();

 private:
  bool next_statement(std::string &stmt);
  void header();
  std::optional<Gate> statement(const std::string &stmt);
  [[noreturn]] void fail(std::string_view token, const std::string &msg) const;

  std::istream &in_;
  QasmOptions options_;
  std::string line_;
  std::size_t pos_ = 0;
  std::size_t line_number_ = 0;
  std::size_t statement_line_ = 0;
  bool have_line_ = false;
  bool header_done_ = false;
  std::string reg_name_;
  std::uint64_t num_qubits_ = 0;
};

Circuit parse_program(std::string_view text, QasmOptions options = {});

/// Parses `pi/m`, `n*pi/m`, `pi`, `n*pi` with an optional leading '-';
/// m must be a power of two. Returns nullopt on anything else.
std::optional<ExactAngle> parse_angle(std::string_view text);
std::string format_angle(const ExactAngle &angle);

std::string print_program(const Circuit &circuit);

/// Textbook QFT without the final qubit-reversal swaps: for each qubit i an
/// `h`, then `crz(pi/2^(j-i))` controlled by every j > i.
void write_qft(std::ostream &out, std::uint64_t n);
std::string generate_qft(std::uint64_t n);

}  // namespace surgec
