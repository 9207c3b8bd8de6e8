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

#include <cstddef>
#include <deque>
#include <functional>
#include <vector>

#include "surgec/qasm.hpp"

namespace surgec {

/// CRZ(a) c,t -> RZ(a/2) c, RZ(a/2) t, CX c,t, RZ(-a/2) t, CX c,t.
/// CRX conjugates the CRZ expansion by H on the target; CZ -> H t, CX, H t.
/// Any other gate is returned unchanged.
std::vector<Gate> decompose_controlled(const Gate &g);

/// Streaming dead-gate elimination. Drops zero-angle rotations, merges
/// consecutive rotations of the same kind on one qubit, and cancels adjacent
/// self-inverse pairs (H H, X X, Z Z, S Sdg, T Tdg, CX CX with equal
/// operands). "Adjacent" means no gate on any shared qubit in between. Keeps
/// at most `window` gates buffered.
class Peephole {
 public:
  using Sink = std::function<void(const Gate &)>;

  explicit Peephole(Sink sink, std::size_t window = 64);

  void push(Gate g);
  void flush();

 private:
  struct Slot {
    Gate gate;
    bool live;
  };
  void emit_front();

  Sink sink_;
  std::size_t window_;
  std::deque<Slot> buffer_;
};

/// Non-streaming convenience form of Peephole.
std::vector<Gate> peephole(const std::vector<Gate> &gates);

}  // namespace surgec
