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

#include "surgec/decompose.hpp"

#include <algorithm>

namespace surgec {

std::vector<Gate> decompose_controlled(const Gate &g) {
  switch (g.kind) {
    case GateKind::CRZ: {
      const QubitId c = g.qubits[0];
      const QubitId t = g.qubits[1];
      const ExactAngle half = angle_halve(*g.angle);
      return {make_gate(GateKind::RZ, {c}, half),
              make_gate(GateKind::RZ, {t}, half),
              make_gate(GateKind::CX, {c, t}),
              make_gate(GateKind::RZ, {t}, -half),
              make_gate(GateKind::CX, {c, t})};
    }
    case GateKind::CRX: {
      const QubitId t = g.qubits[1];
      std::vector<Gate> out{make_gate(GateKind::H, {t})};
      for (Gate &h : decompose_controlled(
               make_gate(GateKind::CRZ, g.qubits, g.angle))) {
        out.push_back(std::move(h));
      }
      out.push_back(make_gate(GateKind::H, {t}));
      return out;
    }
    case GateKind::CZ: {
      const QubitId t = g.qubits[1];
      return {make_gate(GateKind::H, {t}), make_gate(GateKind::CX, g.qubits),
              make_gate(GateKind::H, {t})};
    }
    default:
      return {g};
  }
}

namespace {

bool shares_qubit(const Gate &a, const Gate &b) {
  for (QubitId x : a.qubits) {
    if (std::find(b.qubits.begin(), b.qubits.end(), x) != b.qubits.end()) {
      return true;
    }
  }
  return false;
}

bool inverse_pair(const Gate &a, const Gate &b) {
  if (a.qubits != b.qubits) return false;
  auto is = [&](GateKind x, GateKind y) {
    return (a.kind == x && b.kind == y) || (a.kind == y && b.kind == x);
  };
  if (a.kind == b.kind &&
      (a.kind == GateKind::H || a.kind == GateKind::X ||
       a.kind == GateKind::Z || a.kind == GateKind::CX ||
       a.kind == GateKind::CZ)) {
    return true;
  }
  return is(GateKind::S, GateKind::Sdg) || is(GateKind::T, GateKind::Tdg);
}

bool is_rotation(const Gate &g) {
  return g.kind == GateKind::RZ || g.kind == GateKind::RX;
}

bool is_dead(const Gate &g) {
  return g.angle && g.angle->is_zero();
}

}  // namespace

Peephole::Peephole(Sink sink, std::size_t window)
    : sink_(std::move(sink)), window_(std::max<std::size_t>(window, 1)) {}

void Peephole::push(Gate g) {
  if (is_dead(g)) return;
  // The most recent live gate sharing a qubit with g.
  for (auto it = buffer_.rbegin(); it != buffer_.rend(); ++it) {
    if (!it->live || !shares_qubit(it->gate, g)) continue;
    if (inverse_pair(it->gate, g)) {
      it->live = false;
      return;
    }
    if (is_rotation(g) && it->gate.kind == g.kind &&
        it->gate.qubits == g.qubits) {
      it->gate.angle = *it->gate.angle + *g.angle;
      if (it->gate.angle->is_zero()) it->live = false;
      return;
    }
    break;
  }
  buffer_.push_back({std::move(g), true});
  while (buffer_.size() > window_) emit_front();
}

void Peephole::emit_front() {
  Slot s = std::move(buffer_.front());
  buffer_.pop_front();
  if (s.live) sink_(s.gate);
}

void Peephole::flush() {
  while (!buffer_.empty()) emit_front();
}

std::vector<Gate> peephole(const std::vector<Gate> &gates) {
  std::vector<Gate> out;
  Peephole p([&](const Gate &g) { out.push_back(g); });
  for (const Gate &g : gates) p.push(g);
  p.flush();
  return out;
}

}  // namespace surgec
