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

#include "surgec/lowering.hpp"

#include "surgec/error.hpp"

namespace surgec {

LliEmitter::LliEmitter(Sink sink, PatchId first_ancilla)
    : sink_(std::move(sink)), next_ancilla_(first_ancilla) {}

std::uint64_t LliEmitter::emit(Instruction instr) {
  for (auto it = conditions_.rbegin(); it != conditions_.rend(); ++it) {
    instr = make_conditional(*it, std::move(instr));
  }
  sink_(instr);
  return count_++;
}

namespace {

MultiBodyMeasure with_ancilla(const PauliProduct &p, int sign, PatchId a) {
  MultiBodyMeasure m;
  for (const auto &t : p.terms()) m.operands.push_back({t.qubit, t.op});
  m.operands.push_back({a, Pauli::Z});
  m.sign = sign;
  return m;
}

// exp(-i s pi/4 P) for s = +-1, P positive.
void lower_quarter(LliEmitter &e, const PauliProduct &p, int s,
                   const LoweringOptions &opt) {
  if (p.weight() == 1 && p.terms()[0].op == Pauli::Z) {
    const QubitId q = p.terms()[0].qubit;
    e.emit(SGate{q});
    if (s < 0) e.emit(TransversalPauli{q, Basis::Z});
    return;
  }
  if (p.weight() == 1 && p.terms()[0].op == Pauli::X) {
    const QubitId q = p.terms()[0].qubit;
    lower_letter(e, 'H', q, opt);
    e.emit(SGate{q});
    lower_letter(e, 'H', q, opt);
    if (s < 0) e.emit(TransversalPauli{q, Basis::X});
    return;
  }
  const PatchId a = e.fresh_ancilla();
  e.emit(Init{a, InitState::Plus});
  e.emit(SGate{a});
  const auto b = e.emit(with_ancilla(p, s, a));
  const auto x = e.emit(MeasureSingle{a, Basis::X});
  {
    LliEmitter::Scope when(e, {b, 1});
    lower_pauli(e, p);
  }
  LliEmitter::Scope when(e, {x, 1});
  lower_pauli(e, p);
}

// exp(-i k pi/8 P) for even k.
void lower_clifford(LliEmitter &e, const PauliProduct &p, int k,
                    const LoweringOptions &opt) {
  switch (((k / 2) % 4 + 4) % 4) {
    case 0: return;
    case 1: lower_quarter(e, p, 1, opt); return;
    case 2: lower_pauli(e, p); return;
    case 3: lower_quarter(e, p, -1, opt); return;
  }
}

}  // namespace

void lower_pauli(LliEmitter &e, const PauliProduct &p) {
  for (const auto &t : p.terms()) {
    if (t.op == Pauli::X || t.op == Pauli::Y) {
      e.emit(TransversalPauli{t.qubit, Basis::X});
    }
    if (t.op == Pauli::Z || t.op == Pauli::Y) {
      e.emit(TransversalPauli{t.qubit, Basis::Z});
    }
  }
}

void lower_letter(LliEmitter &e, char letter, QubitId q,
                  const LoweringOptions &opt) {
  switch (letter) {
    case 'H':
      e.emit(TransversalHadamard{q});
      if (opt.boundary_rotate) e.emit(BoundaryRotate{q});
      return;
    case 'S': e.emit(SGate{q}); return;
    case 'T':
      lower_rotation(e, {PauliProduct::single(q, Pauli::Z), ExactAngle::eighths(1)},
                     opt);
      return;
    case 'X': e.emit(TransversalPauli{q, Basis::X}); return;
    case 'Z': e.emit(TransversalPauli{q, Basis::Z}); return;
    default:
      throw Error(ErrorKind::UnsupportedBlock,
                  std::string("not a Clifford+T letter: '") + letter + "'");
  }
}

void lower_rotation(LliEmitter &e, const PauliRotation &r,
                    const LoweringOptions &opt) {
  auto k8 = r.angle.as_eighths();
  if (!k8) {
    throw Error(ErrorKind::UnsupportedBlock,
                "rotation by " + r.angle.to_string() +
                    " pi is not a multiple of pi/8");
  }
  if (r.axis.is_identity()) return;
  int k = r.axis.sign() < 0 ? -*k8 : *k8;
  const PauliProduct p = r.axis.with_sign(1);
  // P(pi) = -I, so k is only meaningful mod 8; pick the representative in
  // (-4, 4].
  k = ((k % 8) + 8) % 8;
  if (k > 4) k -= 8;
  if (k % 2 == 0) {
    lower_clifford(e, p, k, opt);
    return;
  }
  const int s = k > 0 ? 1 : -1;
  const PatchId m = e.fresh_ancilla();
  e.emit(RequestMagicState{m});
  const auto b = e.emit(with_ancilla(p, s, m));
  const auto x = e.emit(MeasureSingle{m, Basis::X});
  for (int bit : {0, 1}) {
    const int injected = bit == 0 ? s : -s;
    const int residual = k - injected;
    if (((residual % 8) + 8) % 8 == 0) continue;
    LliEmitter::Scope when(e, {b, bit});
    lower_clifford(e, p, residual, opt);
  }
  LliEmitter::Scope when(e, {x, 1});
  lower_pauli(e, p);
}

void lower_cnot(LliEmitter &e, QubitId control, QubitId target) {
  const PatchId a = e.fresh_ancilla();
  e.emit(Init{a, InitState::Plus});
  MultiBodyMeasure zz;
  zz.operands = {{control, Pauli::Z}, {a, Pauli::Z}};
  const auto s1 = e.emit(zz);
  MultiBodyMeasure xx;
  xx.operands = {{a, Pauli::X}, {target, Pauli::X}};
  const auto s2 = e.emit(xx);
  const auto s3 = e.emit(MeasureSingle{a, Basis::Z});
  {
    LliEmitter::Scope when(e, {s2, 1});
    e.emit(TransversalPauli{control, Basis::Z});
  }
  {
    LliEmitter::Scope when(e, {s1, 1});
    e.emit(TransversalPauli{target, Basis::X});
  }
  LliEmitter::Scope when(e, {s3, 1});
  e.emit(TransversalPauli{target, Basis::X});
}

void lower_measurement(LliEmitter &e, const PauliProduct &observable) {
  if (observable.is_identity()) {
    throw Error(ErrorKind::UnsupportedBlock, "measurement of the identity");
  }
  if (observable.weight() >= 2) {
    MultiBodyMeasure m;
    for (const auto &t : observable.terms()) m.operands.push_back({t.qubit, t.op});
    m.sign = observable.sign();
    e.emit(m);
    return;
  }
  const auto t = observable.terms()[0];
  const bool flip = observable.sign() < 0;
  switch (t.op) {
    case Pauli::X:
      if (flip) e.emit(TransversalPauli{t.qubit, Basis::Z});
      e.emit(MeasureSingle{t.qubit, Basis::X});
      return;
    case Pauli::Z:
      if (flip) e.emit(TransversalPauli{t.qubit, Basis::X});
      e.emit(MeasureSingle{t.qubit, Basis::Z});
      return;
    case Pauli::Y:
      // S^dagger maps Y to X; S^dagger Z = S absorbs the sign flip.
      e.emit(SGate{t.qubit});
      if (!flip) e.emit(TransversalPauli{t.qubit, Basis::Z});
      e.emit(MeasureSingle{t.qubit, Basis::X});
      return;
    case Pauli::I:
      break;
  }
  throw Error(ErrorKind::Internal, "identity term in Pauli product");
}

void lower_gate(LliEmitter &e, const Gate &g, const LoweringOptions &opt) {
  const QubitId q = g.qubits.at(0);
  switch (g.kind) {
    case GateKind::H: lower_letter(e, 'H', q, opt); return;
    case GateKind::X: lower_letter(e, 'X', q, opt); return;
    case GateKind::Z: lower_letter(e, 'Z', q, opt); return;
    case GateKind::S: lower_letter(e, 'S', q, opt); return;
    case GateKind::Sdg:
      e.emit(SGate{q});
      e.emit(TransversalPauli{q, Basis::Z});
      return;
    case GateKind::T: lower_letter(e, 'T', q, opt); return;
    case GateKind::Tdg:
      lower_rotation(e, {PauliProduct::single(q, Pauli::Z), ExactAngle::eighths(-1)},
                     opt);
      return;
    case GateKind::CX: lower_cnot(e, q, g.qubits.at(1)); return;
    default:
      throw Error(ErrorKind::UnsupportedGate,
                  std::string(gate_name(g.kind)) +
                      " must be decomposed or approximated before lowering");
  }
}

}  // namespace surgec
