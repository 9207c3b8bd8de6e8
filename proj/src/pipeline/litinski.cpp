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

#include "surgec/litinski.hpp"

#include "surgec/error.hpp"

namespace surgec {

namespace {

// Image of `p` under conjugation by exp(-i a C), a Clifford angle.
// Quarter turn: C anticommuting with P maps P -> sign(a) * (-i C P).
// Half turn: P -> -P.
PauliProduct conjugate(const PauliRotation &c, const PauliProduct &p) {
  if (c.axis.commutes_with(p)) return p;
  const auto k = c.angle.as_eighths();
  if (!k || *k % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "commuting past a non-Clifford rotation " + c.angle.to_string());
  }
  const int turns = ((*k % 8) + 8) % 8;  // 2, 4 or 6 (0 handled: commutes)
  if (turns == 0) return p;
  if (turns == 4) return p.negated();
  PauliProduct q = pauli_multiply(c.axis, p);
  return turns == 2 ? q : q.negated();
}

PauliRotation inverse(const PauliRotation &c) { return {c.axis, -c.angle}; }

}  // namespace

PauliRotation commute_clifford_past(const PauliRotation &c,
                                    const PauliRotation &r) {
  return {conjugate(c, r.axis), r.angle};
}

PauliProduct conjugate_observable(const PauliRotation &c,
                                  const PauliProduct &observable) {
  return conjugate(inverse(c), observable);
}

LitinskiResult litinski_transform(
    const std::vector<RotationBlock> &blocks,
    const std::vector<PauliProduct> &final_measurements) {
  // Cliffords seen so far, in time order. A later rotation R is replaced by
  // V^dagger R V where V is their product, innermost (latest) first.
  std::vector<PauliRotation> cliffords;
  LitinskiResult out;
  auto pull_back = [&](PauliProduct p) {
    for (auto it = cliffords.rbegin(); it != cliffords.rend(); ++it) {
      p = conjugate(inverse(*it), p);
    }
    return p;
  };
  auto add = [&](const PauliRotation &r) {
    switch (classify(r.angle)) {
      case AngleClass::Identity:
        return;
      case AngleClass::Pauli:
      case AngleClass::Clifford:
        cliffords.push_back(r);
        return;
      case AngleClass::NonClifford:
        out.rotations.push_back({pull_back(r.axis), r.angle});
        return;
      case AngleClass::Arbitrary:
        throw Error(ErrorKind::UnsupportedBlock,
                    "rotation angle " + r.angle.to_string() +
                        " pi must be approximated first");
    }
  };
  for (const RotationBlock &b : blocks) {
    if (const auto *r = std::get_if<PauliRotation>(&b)) {
      add(*r);
    } else if (const auto *c = std::get_if<ResidualClifford>(&b)) {
      for (const auto &r : as_rotations(*c)) add(r);
    } else {
      throw Error(ErrorKind::MidCircuitMeasurement,
                  "measurement of " +
                      std::get<PauliMeasurement>(b).observable.to_string() +
                      " before the end of the circuit");
    }
  }
  for (const PauliProduct &m : final_measurements) {
    out.measurements.push_back(pull_back(m));
  }
  return out;
}

}  // namespace surgec
