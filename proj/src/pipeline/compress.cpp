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

#include "surgec/blocks.hpp"

#include "surgec/error.hpp"

namespace surgec {

AngleClass classify(const ExactAngle &angle) {
  const auto k = angle.as_eighths();
  if (!k) return AngleClass::Arbitrary;
  if (*k % 8 == 0) return AngleClass::Identity;
  if (*k % 4 == 0) return AngleClass::Pauli;
  if (*k % 2 == 0) return AngleClass::Clifford;
  return AngleClass::NonClifford;
}

namespace {

bool is_phase_letter(char c) { return c == 'S' || c == 'T'; }

int eighths_of(char c) { return c == 'S' ? 2 : 1; }

}  // namespace

std::vector<RotationBlock> compress_to_pauli_rotations(std::string_view letters,
                                                       QubitId qubit) {
  std::vector<RotationBlock> out;
  std::size_t i = 0;
  auto run_end = [&](std::size_t from) {
    while (from < letters.size() && is_phase_letter(letters[from])) ++from;
    return from;
  };
  auto run_angle = [&](std::size_t from, std::size_t to) {
    int k = 0;
    for (std::size_t j = from; j < to; ++j) k += eighths_of(letters[j]);
    return ExactAngle::eighths(k);
  };
  while (i < letters.size()) {
    const char c = letters[i];
    if (std::string_view("HSTXZ").find(c) == std::string_view::npos) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string("not a Clifford+T letter: '") + c + "'");
    }
    if (c == 'H') {
      const std::size_t end = run_end(i + 1);
      if (end > i + 1 && end < letters.size() && letters[end] == 'H') {
        const ExactAngle a = run_angle(i + 1, end);
        if (!a.is_zero()) {
          out.emplace_back(
              PauliRotation{PauliProduct::single(qubit, Pauli::X), a});
        }
        i = end + 1;
        continue;
      }
      out.emplace_back(ResidualClifford{'H', qubit});
      ++i;
    } else if (is_phase_letter(c)) {
      const std::size_t end = run_end(i);
      const ExactAngle a = run_angle(i, end);
      if (!a.is_zero()) {
        out.emplace_back(PauliRotation{PauliProduct::single(qubit, Pauli::Z), a});
      }
      i = end;
    } else {
      out.emplace_back(ResidualClifford{c, qubit});
      ++i;
    }
  }
  return out;
}

std::vector<PauliRotation> as_rotations(const ResidualClifford &c) {
  const auto z = PauliProduct::single(c.qubit, Pauli::Z);
  const auto x = PauliProduct::single(c.qubit, Pauli::X);
  const auto quarter = ExactAngle::eighths(2);
  const auto half = ExactAngle::eighths(4);
  switch (c.gate) {
    case 'H': return {{z, quarter}, {x, quarter}, {z, quarter}};
    case 'S': return {{z, quarter}};
    case 'X': return {{x, half}};
    case 'Z': return {{z, half}};
    default:
      throw Error(ErrorKind::InvalidArgument,
                  std::string("not a residual Clifford: '") + c.gate + "'");
  }
}

std::vector<PauliRotation> gate_rotations(const Gate &g) {
  const QubitId q = g.qubits.at(0);
  const auto z = PauliProduct::single(q, Pauli::Z);
  switch (g.kind) {
    case GateKind::H: return as_rotations({'H', q});
    case GateKind::X: return as_rotations({'X', q});
    case GateKind::Z: return as_rotations({'Z', q});
    case GateKind::S: return {{z, ExactAngle::eighths(2)}};
    case GateKind::Sdg: return {{z, ExactAngle::eighths(-2)}};
    case GateKind::T: return {{z, ExactAngle::eighths(1)}};
    case GateKind::Tdg: return {{z, ExactAngle::eighths(-1)}};
    case GateKind::CX: {
      const QubitId t = g.qubits.at(1);
      const auto zx = PauliProduct({{q, Pauli::Z}, {t, Pauli::X}});
      return {{zx, ExactAngle::eighths(2)},
              {z, ExactAngle::eighths(-2)},
              {PauliProduct::single(t, Pauli::X), ExactAngle::eighths(-2)}};
    }
    default:
      throw Error(ErrorKind::UnsupportedGate,
                  std::string("no rotation form for ") + gate_name(g.kind));
  }
}

std::string to_string(const RotationBlock &block) {
  if (const auto *r = std::get_if<PauliRotation>(&block)) {
    return r->axis.to_string() + "(" + r->angle.to_string() + " pi)";
  }
  if (const auto *c = std::get_if<ResidualClifford>(&block)) {
    return std::string(1, c->gate) + std::to_string(c->qubit);
  }
  return "M" + std::get<PauliMeasurement>(block).observable.to_string();
}

}  // namespace surgec
