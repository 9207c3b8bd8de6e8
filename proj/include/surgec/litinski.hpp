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

#include <vector>

#include "surgec/blocks.hpp"

namespace surgec {

/// Returns r' with c * r = r' * c, i.e. r' = c r c^dagger. c must be a
/// Clifford rotation (angle +-pi/4 or +-pi/2).
PauliRotation commute_clifford_past(const PauliRotation &c,
                                    const PauliRotation &r);

/// The observable P' with (c^dagger P c), i.e. measuring P after c equals
/// measuring P' before it.
PauliProduct conjugate_observable(const PauliRotation &c,
                                  const PauliProduct &observable);

struct LitinskiResult {
  std::vector<PauliRotation> rotations;   // non-Clifford, time order
  std::vector<PauliProduct> measurements;  // commuting observables
};

/// Moves every Clifford past all later rotations and the final measurements
/// and drops it. Valid only when the measurement outcomes are all that
/// matters. `blocks` are in time order; a PauliMeasurement among them is a
/// mid-circuit measurement and is rejected.
LitinskiResult litinski_transform(const std::vector<RotationBlock> &blocks,
                                  const std::vector<PauliProduct> &final_measurements);

}  // namespace surgec
