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

#include "surgec/dense.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "surgec/error.hpp"

namespace surgec {

namespace {
constexpr double kSqrtHalf = 0.70710678118654752440;
const Amplitude kI{0.0, 1.0};
const Matrix2 kH{kSqrtHalf, kSqrtHalf, kSqrtHalf, -kSqrtHalf};
const Matrix2 kX{0, 1, 1, 0};
const Matrix2 kS{1, 0, 0, kI};
const Matrix2 kSdg{1, 0, 0, -kI};
}  // namespace

DenseState::DenseState(std::size_t num_qubits)
    : n_(num_qubits), amps_(std::size_t{1} << num_qubits) {
  amps_[0] = 1;
}

void DenseState::apply(std::size_t q, const Matrix2 &u) {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const Amplitude a = amps_[i];
    const Amplitude b = amps_[i | bit];
    amps_[i] = u[0] * a + u[1] * b;
    amps_[i | bit] = u[2] * a + u[3] * b;
  }
}

void DenseState::apply_controlled(std::size_t control, std::size_t target,
                                  const Matrix2 &u) {
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (!(i & cbit) || (i & tbit)) continue;
    const Amplitude a = amps_[i];
    const Amplitude b = amps_[i | tbit];
    amps_[i] = u[0] * a + u[1] * b;
    amps_[i | tbit] = u[2] * a + u[3] * b;
  }
}

Matrix2 gate_matrix(GateKind kind, double a) {
  switch (kind) {
    case GateKind::H: return kH;
    case GateKind::X: return kX;
    case GateKind::Z: return {1, 0, 0, -1};
    case GateKind::S: return kS;
    case GateKind::Sdg: return kSdg;
    case GateKind::T: return {1, 0, 0, std::polar(1.0, M_PI / 4)};
    case GateKind::Tdg: return {1, 0, 0, std::polar(1.0, -M_PI / 4)};
    case GateKind::CX: return kX;
    case GateKind::CZ: return {1, 0, 0, -1};
    case GateKind::RZ: return {std::polar(1.0, -a / 2), 0, 0, std::polar(1.0, a / 2)};
    case GateKind::RX: {
      const double c = std::cos(a / 2);
      const double s = std::sin(a / 2);
      return {c, -kI * s, -kI * s, c};
    }
    case GateKind::CRZ: return {1, 0, 0, std::polar(1.0, a)};
    case GateKind::CRX: {
      // H diag(1, e^{ia}) H
      const Amplitude e = std::polar(1.0, a);
      return {(1.0 + e) / 2.0, (1.0 - e) / 2.0, (1.0 - e) / 2.0, (1.0 + e) / 2.0};
    }
  }
  throw Error(ErrorKind::Internal, "unknown gate kind");
}

void DenseState::apply_gate(const Gate &g) {
  const double a = g.angle ? g.angle->radians() : 0.0;
  const Matrix2 u = gate_matrix(g.kind, a);
  if (arity(g.kind) == 2) {
    apply_controlled(g.qubits.at(0), g.qubits.at(1), u);
  } else {
    apply(g.qubits.at(0), u);
  }
}

void DenseState::to_z_basis(const std::vector<std::pair<std::size_t, Pauli>> &p,
                            bool inverse) {
  // X = H Z H and Y = (S H) Z (S H)^dagger.
  for (const auto &[q, op] : p) {
    if (op == Pauli::X) {
      apply(q, kH);
    } else if (op == Pauli::Y) {
      if (inverse) {
        apply(q, kH);
        apply(q, kS);
      } else {
        apply(q, kSdg);
        apply(q, kH);
      }
    }
  }
}

double DenseState::probability_zero(
    const std::vector<std::pair<std::size_t, Pauli>> &p, int sign) const {
  DenseState copy = *this;
  copy.to_z_basis(p, false);
  std::size_t mask = 0;
  for (const auto &t : p) mask |= std::size_t{1} << t.first;
  double p0 = 0;
  for (std::size_t i = 0; i < copy.amps_.size(); ++i) {
    const int parity = std::popcount(i & mask) & 1;
    const int eigen = (parity ? -1 : 1) * sign;
    if (eigen > 0) p0 += std::norm(copy.amps_[i]);
  }
  return p0;
}

double DenseState::project(const std::vector<std::pair<std::size_t, Pauli>> &p,
                           int sign, int bit) {
  to_z_basis(p, false);
  std::size_t mask = 0;
  for (const auto &t : p) mask |= std::size_t{1} << t.first;
  const int want = bit == 0 ? 1 : -1;
  double prob = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const int eigen = ((std::popcount(i & mask) & 1) ? -1 : 1) * sign;
    if (eigen != want) {
      amps_[i] = 0;
    } else {
      prob += std::norm(amps_[i]);
    }
  }
  if (prob > 0) {
    const double s = 1 / std::sqrt(prob);
    for (auto &a : amps_) a *= s;
  }
  to_z_basis(p, true);
  return prob;
}

std::vector<Amplitude> simulate_circuit(const Circuit &circuit) {
  DenseState s(circuit.num_qubits);
  for (const Gate &g : circuit.gates) s.apply_gate(g);
  return s.amplitudes();
}

DenseLliSimulator::DenseLliSimulator(std::vector<PatchId> patches,
                                     PatchId implicit_patches)
    : live_(patches.size(), 0), state_(patches.size()) {
  std::sort(patches.begin(), patches.end());
  for (std::size_t k = 0; k < patches.size(); ++k) {
    index_[patches[k]] = k;
    if (patches[k] < implicit_patches) live_[k] = 1;
  }
}

std::size_t DenseLliSimulator::qubit(PatchId id, std::uint64_t seq) const {
  auto it = index_.find(id);
  if (it == index_.end() || !live_[it->second]) {
    throw Error(ErrorKind::UnknownPatch, "#" + std::to_string(seq) + ": patch " +
                                             std::to_string(id) + " is not live");
  }
  return it->second;
}

bool DenseLliSimulator::live(PatchId id) const {
  auto it = index_.find(id);
  return it != index_.end() && live_[it->second];
}

std::vector<PatchId> DenseLliSimulator::live_patches() const {
  std::vector<PatchId> out;
  for (const auto &[id, k] : index_) {
    if (live_[k]) out.push_back(id);
  }
  return out;
}

std::optional<int> DenseLliSimulator::apply(std::uint64_t seq,
                                            const Instruction &instr,
                                            const OutcomeChooser &choose) {
  if (instr.is<ConditionalCorrection>()) {
    const auto &c = instr.as<ConditionalCorrection>();
    auto it = outcomes_.find(c.condition.seq);
    if (it == outcomes_.end()) {
      throw Error(ErrorKind::InvalidArgument, "no outcome for #" +
                                                  std::to_string(c.condition.seq));
    }
    if (it->second != c.condition.bit) return std::nullopt;
    return apply(seq, *c.body, choose);
  }
  if (instr.is<Init>() || instr.is<RequestMagicState>()) {
    const PatchId id = patches_of(instr)[0];
    auto it = index_.find(id);
    if (it == index_.end() || live_[it->second]) {
      throw Error(ErrorKind::InvalidArgument, "cannot initialise patch " +
                                                  std::to_string(id));
    }
    const std::size_t q = it->second;
    live_[q] = 1;
    // Dead qubits rest in |0>.
    if (instr.is<RequestMagicState>()) {
      state_.apply(q, kH);
      state_.apply(q, gate_matrix(GateKind::T));
    } else if (instr.as<Init>().state == InitState::Plus) {
      state_.apply(q, kH);
    }
    return std::nullopt;
  }
  if (instr.is<TransversalPauli>()) {
    const auto &p = instr.as<TransversalPauli>();
    state_.apply(qubit(p.patch, seq),
                 p.op == Basis::X ? kX : gate_matrix(GateKind::Z));
    return std::nullopt;
  }
  if (instr.is<TransversalHadamard>()) {
    state_.apply(qubit(instr.as<TransversalHadamard>().patch, seq), kH);
    return std::nullopt;
  }
  if (instr.is<SGate>()) {
    state_.apply(qubit(instr.as<SGate>().patch, seq), kS);
    return std::nullopt;
  }
  if (instr.is<BoundaryRotate>()) {
    qubit(instr.as<BoundaryRotate>().patch, seq);
    return std::nullopt;
  }
  std::vector<std::pair<std::size_t, Pauli>> p;
  int sign = 1;
  if (instr.is<MeasureSingle>()) {
    const auto &m = instr.as<MeasureSingle>();
    p.push_back({qubit(m.patch, seq), to_pauli(m.basis)});
  } else if (instr.is<MultiBodyMeasure>()) {
    const auto &m = instr.as<MultiBodyMeasure>();
    for (const auto &o : m.operands) p.push_back({qubit(o.patch, seq), o.op});
    sign = m.sign;
  } else {
    throw Error(ErrorKind::Internal, "unhandled instruction in dense simulator");
  }
  const double p0 = std::clamp(state_.probability_zero(p, sign), 0.0, 1.0);
  const int bit = choose(seq, p0);
  state_.project(p, sign, bit);
  outcomes_[seq] = bit;
  if (instr.is<MeasureSingle>()) {
    const std::size_t q = p[0].first;
    // The qubit is now an eigenstate of the measured Pauli; rotate it back
    // to |0>.
    if (p[0].second == Pauli::X) state_.apply(q, kH);
    if (bit == 1) state_.apply(q, kX);
    live_[q] = 0;
  }
  return bit;
}

std::vector<Amplitude> DenseLliSimulator::amplitudes(
    const std::vector<PatchId> &order) const {
  std::vector<std::size_t> qs;
  for (PatchId id : order) qs.push_back(index_.at(id));
  std::vector<Amplitude> out(std::size_t{1} << order.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::size_t full = 0;
    for (std::size_t b = 0; b < qs.size(); ++b) {
      if (i >> b & 1) full |= std::size_t{1} << qs[b];
    }
    out[i] = state_.amplitudes()[full];
  }
  return out;
}

double overlap(const std::vector<Amplitude> &a, const std::vector<Amplitude> &b) {
  Amplitude s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += std::conj(a[i]) * b[i];
  return std::abs(s);
}

double phase_distance(const std::vector<Amplitude> &a, const std::vector<Amplitude> &b) {
  if (a.size() != b.size()) return INFINITY;
  Amplitude s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(b[i]) * a[i];
  const Amplitude ph = std::abs(s) > 0 ? s / std::abs(s) : Amplitude(1);
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::norm(a[i] - ph * b[i]);
  return std::sqrt(d);
}

double trace_distance(const std::vector<Amplitude> &a, const std::vector<Amplitude> &b) {
  const double f = overlap(a, b);
  return std::sqrt(std::max(0.0, 1 - f * f));
}

}  // namespace surgec
