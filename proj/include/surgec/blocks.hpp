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

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "surgec/pauli.hpp"
#include "surgec/qasm.hpp"

namespace surgec {

/// A Clifford gate left over by compression: one of H, X, Z, S.
struct ResidualClifford {
  char gate;
  QubitId qubit;
  bool operator==(const ResidualClifford &) const = default;
};

struct PauliMeasurement {
  PauliProduct observable;
  bool operator==(const PauliMeasurement &) const = default;
};

using RotationBlock =
    std::variant<PauliRotation, ResidualClifford, PauliMeasurement>;

enum class AngleClass {
  Identity,     // 0 or pi: a global phase
  Pauli,        // +-pi/2
  Clifford,     // odd multiple of pi/4
  NonClifford,  // odd multiple of pi/8: needs a magic state
  Arbitrary,    // anything finer; must be approximated first
};

AngleClass classify(const ExactAngle &angle);

/// Groups a letter sequence (matrix-product order) into Pauli rotations.
/// Maximal runs of S and T become one Z rotation; H, run, H becomes one X
/// rotation; everything else is kept as a residual Clifford. The output is in
/// the same matrix-product order as the input.
std::vector<RotationBlock> compress_to_pauli_rotations(std::string_view letters,
                                                       QubitId qubit = 0);

/// Residual Cliffords as rotations, in time order (H = Z X Z, quarter turns).
std::vector<PauliRotation> as_rotations(const ResidualClifford &c);

/// A Clifford+T gate (H X Z S Sdg T Tdg CX) as rotations in time order.
std::vector<PauliRotation> gate_rotations(const Gate &g);

std::string to_string(const RotationBlock &block);

}  // namespace surgec
