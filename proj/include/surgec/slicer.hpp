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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "surgec/layout.hpp"
#include "surgec/lli.hpp"

namespace surgec {

enum class Orientation : std::uint8_t {
  Default,  // rough (X) north/south, smooth (Z) east/west
  Rotated,  // rough east/west, smooth north/south
};

enum class ActivityKind : std::uint8_t {
  Free,
  Qubit,         // data patch on a Q cell
  Ancilla,       // dynamic patch (|0>, |+> or bound magic state)
  Route,         // merge space of a multi-body measurement
  Busy,          // extra cell claimed by an S gate or boundary rotation
  Distillation,
  MagicQueued,
};

struct CellActivity {
  ActivityKind kind = ActivityKind::Free;
  PatchId patch = 0;
  Orientation orientation = Orientation::Default;
  const char *state = nullptr;  // ancilla tag: "zero", "plus", "magic"
  std::int64_t seq = -1;        // instruction active on the cell, if any
  const char *op = nullptr;
  int region = -1;
  int countdown = -1;
};

struct SliceEvent {
  std::uint64_t seq;
  Instruction instr;
};

struct Slice {
  std::uint64_t index = 0;
  int rows = 0;
  int cols = 0;
  std::vector<CellActivity> cells;  // row-major
  std::vector<SliceEvent> events;   // instructions starting in this slice

  const CellActivity &at(int r, int c) const { return cells[r * cols + c]; }
};

struct SlicerConfig {
  int distill_period = 6;
  // Queued magic states per distillation region; 0 lets a region fill every
  // neighbouring routing cell. Queued states block routing, so a small cap
  // keeps cramped layouts routable.
  int max_queued_per_region = 1;
  bool route_cache = true;
  // Magic states appear on demand next to the requesting patch instead of
  // coming from distillation regions.
  bool instant_magic = false;
  int mbm_duration = 1;
  int transversal_duration = 1;
  int init_duration = 1;
  int measure_duration = 1;
  int sgate_duration = 1;
  int rotate_duration = 3;
  // Instructions scanned ahead for ancilla placement hints.
  std::size_t lookahead = 8;
  // Measurements remembered for validating IF references.
  std::size_t outcome_window = std::size_t{1} << 16;
  // Render cell contents for the visitor; statistics need no rendering.
  bool render = true;
};

struct RunStats {
  std::uint64_t slices = 0;
  std::uint64_t lli = 0;
  std::uint64_t stalls = 0;
  std::uint64_t routes = 0;
  std::uint64_t route_cache_hits = 0;
  std::uint64_t magic_states_consumed = 0;
  std::uint64_t magic_states_produced = 0;
  // queued states dropped to clear a route
  std::uint64_t magic_states_discarded = 0;
  std::uint64_t max_magic_queue = 0;
  int rows = 0;
  int cols = 0;
  std::uint64_t cells = 0;
  std::uint64_t peak_resident_slices = 0;
  // routing cells in use -> number of slices
  std::map<std::uint64_t, std::uint64_t> routing_occupancy;
  // queued magic states -> number of slices
  std::map<std::uint64_t, std::uint64_t> magic_queue;

  std::string to_json() const;
};

/// Source of instructions: returns nullopt at end of stream.
using LliSource = std::function<std::optional<Instruction>()>;
using SliceVisitor = std::function<void(const Slice &)>;

/// Schedules an LLI stream onto a layout, one slice at a time, and hands
/// every finished slice to the visitor. Only the slice under construction is
/// kept; memory does not grow with stream length.
///
/// Patch ids below the number of Q cells are data patches bound to the Q cell
/// of that number; they start live in |0>. Other ids are ancillas placed by
/// their INIT or MAGIC. A data id whose first use is INIT or MAGIC names an
/// ancilla instead, and its Q cell stays empty; compilers number ancillas
/// after the circuit's qubits, so this frees the Q cells a circuit leaves
/// unused.
RunStats run_stream(const LliSource &source, const Layout &layout,
                    const SliceVisitor &visitor, const SlicerConfig &config = {});

RunStats run_stream(const std::vector<Instruction> &instrs, const Layout &layout,
                    const SliceVisitor &visitor, const SlicerConfig &config = {});

}  // namespace surgec
