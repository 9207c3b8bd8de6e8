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

#include "surgec/slicer.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <limits>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "surgec/error.hpp"
#include "surgec/router.hpp"

namespace surgec {

namespace {

constexpr PatchId kNoPatch = std::numeric_limits<PatchId>::max();

struct Patch {
  int cell = -1;
  Orientation orientation = Orientation::Default;
  const char *state = nullptr;
  bool data = false;
  std::int64_t busy_until = 0;
};

struct Cell {
  PatchId patch = kNoPatch;
  bool queued = false;
  int queued_region = -1;
  Orientation queued_orientation = Orientation::Default;
  // The activity occupying the cell during [act_start, act_until).
  std::int64_t act_start = 0;
  std::int64_t act_until = 0;
  CellActivity act;
};

// A merge the new patch is about to take part in.
struct Hint {
  PatchId partner;
  Pauli partner_op;
  Pauli self_op;
};

struct Pending {
  bool magic = false;
  InitState state = InitState::Zero;
  std::uint64_t seq = 0;
  Instruction instr = MeasureSingle{};
  std::int64_t earliest = 0;
};

enum class Failure { None, Busy, Route, Cell, Magic };

const char *op_name(const Instruction &instr) {
  const Instruction &in = innermost(instr);
  if (in.is<Init>()) return "INIT";
  if (in.is<MeasureSingle>()) return "MEAS";
  if (in.is<MultiBodyMeasure>()) return "MBM";
  if (in.is<TransversalPauli>()) return "PAULI";
  if (in.is<TransversalHadamard>()) return "H";
  if (in.is<BoundaryRotate>()) return "ROT";
  if (in.is<SGate>()) return "S";
  if (in.is<RequestMagicState>()) return "MAGIC";
  return "IF";
}

Orientation flip(Orientation o) {
  return o == Orientation::Default ? Orientation::Rotated : Orientation::Default;
}

class Slicer {
 public:
  Slicer(const Layout &layout, const SlicerConfig &config,
         const SliceVisitor &visitor)
      : layout_(layout),
        config_(config),
        visitor_(visitor),
        router_(layout.rows(), layout.cols()),
        static_router_(layout.rows(), layout.cols()),
        cells_(layout.size()),
        data_state_(layout.qubit_cells().size(), 0),
        queued_in_(layout.regions().size(), 0),
        remaining_(layout.regions().size(),
                   std::max(config.distill_period, 1) - 1),
        outcomes_(std::max<std::size_t>(config.outcome_window, 1)) {
    if (config_.distill_period < 1) {
      throw Error(ErrorKind::InvalidArgument, "distillation period must be >= 1");
    }
    for (std::size_t q = 0; q < layout.qubit_cells().size(); ++q) {
      const int cell = layout.index(layout.qubit_cells()[q]);
      Patch p;
      p.cell = cell;
      p.data = true;
      patches_.emplace(q, p);
      cells_[cell].patch = q;
    }
    routable_.assign(layout.size(), 0);
    for (std::size_t i = 0; i < layout.size(); ++i) {
      const CellKind k = layout.kind(static_cast<int>(i));
      routable_[i] = k == CellKind::Routing || k == CellKind::Ancilla;
    }
    max_duration_ = std::max({config.mbm_duration, config.transversal_duration,
                              config.init_duration, config.measure_duration,
                              config.sgate_duration, config.rotate_duration, 1});
    slice_.rows = layout.rows();
    slice_.cols = layout.cols();
    stats_.rows = layout.rows();
    stats_.cols = layout.cols();
    stats_.cells = layout.size();
  }

  void process(std::uint64_t seq, const Instruction &instr,
               const std::deque<Instruction> &ahead) {
    ++stats_.lli;
    started_ = true;
    validate(instr);
    std::int64_t earliest = 0;
    for (const Instruction *cur = &instr; cur->is<ConditionalCorrection>();) {
      const auto &c = cur->as<ConditionalCorrection>();
      earliest = std::max(earliest, outcome_ready(seq, c.condition));
      cur = c.body.get();
    }
    const Instruction &in = innermost(instr);

    if (in.is<Init>() || in.is<RequestMagicState>()) {
      const PatchId id = patches_of(in)[0];
      const bool magic = in.is<RequestMagicState>();
      if (id < data_state_.size() && data_state_[id] != kAncillaId) {
        if (data_state_[id] == kLive) {
          throw Error(ErrorKind::InvalidArgument,
                      "#" + std::to_string(seq) + ": INIT of live patch " +
                          std::to_string(id));
        }
        if (!magic && data_state_[id] == kMeasured) {
          init_data(seq, instr, id, in.as<Init>().state, earliest);
          return;
        }
        // An id never used as data names an ancilla; its Q cell stays empty.
        if (data_state_[id] == kUntouched) {
          cells_[patches_.at(id).cell].patch = kNoPatch;
          patches_.erase(id);
        }
        data_state_[id] = kAncillaId;
      }
      if (patches_.count(id) || pending_.count(id)) {
        throw Error(ErrorKind::InvalidArgument,
                    "#" + std::to_string(seq) + ": patch " + std::to_string(id) +
                        " initialised while live");
      }
      Pending p;
      p.magic = magic;
      if (!magic) p.state = in.as<Init>().state;
      p.seq = seq;
      p.instr = instr;
      p.earliest = earliest;
      pending_.emplace(id, std::move(p));
      return;
    }

    const std::vector<PatchId> ids = patches_of(in);
    for (PatchId id : ids) ensure_patch(id, ahead);
    place(seq, instr, in, earliest);
  }

  void finish() {
    // Unreferenced ancillas still occupy a slice each.
    while (!pending_.empty()) {
      auto it = std::min_element(
          pending_.begin(), pending_.end(),
          [](const auto &a, const auto &b) { return a.second.seq < b.second.seq; });
      place_pending(it->first, {});
    }
    if (!started_) return;
    std::int64_t end = now_ + 1;
    for (const Cell &c : cells_) end = std::max(end, c.act_until);
    for (const auto &[id, p] : patches_) end = std::max(end, p.busy_until);
    while (now_ + 1 < end) advance();
    finalize();
  }

  RunStats stats() {
    stats_.peak_resident_slices = stats_.slices > 0 ? 1 : 0;
    return stats_;
  }

 private:
  // ---------------------------------------------------------------- checks

  void validate(const Instruction &instr) {
    surgec::validate(instr);
  }

  std::int64_t outcome_ready(std::uint64_t seq, OutcomeRef ref) {
    if (ref.seq >= seq) {
      throw Error(ErrorKind::InvalidArgument,
                  "#" + std::to_string(seq) + ": IF refers to #" +
                      std::to_string(ref.seq) + ", which is not earlier");
    }
    // Recorded seqs increase, so the ring is sorted from its oldest entry.
    const std::size_t w = outcomes_.size();
    const std::size_t n = std::min<std::uint64_t>(recorded_, w);
    const std::size_t first = recorded_ - n;
    std::size_t lo = 0, hi = n;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (outcomes_[(first + mid) % w].first < ref.seq) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo < n && outcomes_[(first + lo) % w].first == ref.seq) {
      return outcomes_[(first + lo) % w].second;
    }
    if (recorded_ > w && ref.seq < oldest_outcome_) return 0;
    throw Error(ErrorKind::InvalidArgument,
                "#" + std::to_string(seq) + ": IF refers to #" +
                    std::to_string(ref.seq) + ", which is not a measurement");
  }

  void record_outcome(std::uint64_t seq, std::int64_t ready) {
    auto &slot = outcomes_[recorded_ % outcomes_.size()];
    if (recorded_ >= outcomes_.size()) oldest_outcome_ = slot.first + 1;
    slot = {seq, ready};
    ++recorded_;
  }

  // --------------------------------------------------------------- patches

  void ensure_patch(PatchId id, const std::deque<Instruction> &ahead) {
    const bool data = id < data_state_.size() && data_state_[id] != kAncillaId;
    if (patches_.count(id)) {
      if (data) data_state_[id] = kLive;
      return;
    }
    if (data) {
      throw Error(ErrorKind::DeadPatch,
                  "patch " + std::to_string(id) + " was already measured");
    }
    if (!pending_.count(id)) {
      throw Error(ErrorKind::UnknownPatch,
                  "patch " + std::to_string(id) +
                      " is neither a layout qubit nor an initialised ancilla");
    }
    // Every merge the ancilla takes part in before it is measured, as far
    // as the window reaches, with partners that are already placed.
    std::vector<Hint> hints;
    for (std::size_t k = 0; k < ahead.size(); ++k) {
      const Instruction &next = innermost(ahead[k]);
      if (k > 0 && next.is<MeasureSingle>() && next.as<MeasureSingle>().patch == id) {
        break;
      }
      if (!next.is<MultiBodyMeasure>()) continue;
      const auto &ops = next.as<MultiBodyMeasure>().operands;
      auto self = std::find_if(ops.begin(), ops.end(),
                               [&](const auto &o) { return o.patch == id; });
      if (self == ops.end()) continue;
      for (const auto &o : ops) {
        if (o.patch != id && patches_.count(o.patch)) {
          hints.push_back({o.patch, o.op, self->op});
        }
      }
    }
    place_pending(id, hints);
  }

  bool cell_free(int i) const {
    const Cell &c = cells_[i];
    return routable_[i] && c.patch == kNoPatch && !c.queued && c.act_until <= now_;
  }

  // Queueing a magic state here could wall in the boundary of a patch.
  bool next_to_patch(int i) const {
    for (Coord n : neighbors(layout_, layout_.coord(i))) {
      if (cells_[layout_.index(n)].patch != kNoPatch) return true;
    }
    return false;
  }

  bool has_free_neighbor(int i) const {
    for (Coord n : neighbors(layout_, layout_.coord(i))) {
      const int j = layout_.index(n);
      if (routable_[j] && cells_[j].patch == kNoPatch && !cells_[j].queued) {
        return true;
      }
    }
    return false;
  }

  // Free-cell distances from the partner's boundary for the hinted merge;
  // -1 where unreachable.
  std::vector<int> free_distances(const Hint &h, const std::vector<std::uint8_t> &free) const {
    std::vector<int> dist(cells_.size(), -1);
    std::vector<int> seeds;
    std::vector<std::array<int, 2>> elbows;
    endpoints(patches_.at(h.partner), h.partner_op, seeds, &elbows, free);
    std::deque<int> queue;
    for (int j : seeds) {
      dist[j] = 0;
      queue.push_back(j);
    }
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (Coord n : neighbors(layout_, layout_.coord(u))) {
        const int j = layout_.index(n);
        if (dist[j] < 0 && free[j]) {
          dist[j] = dist[u] + 1;
          queue.push_back(j);
        }
      }
    }
    return dist;
  }

  // An ancilla goes where merge space reaches the right boundary of every
  // hinted partner from the right boundary of the new patch, preferring A
  // cells and then the shortest total connection. Cells that cannot reach
  // a partner now are skipped; the caller waits for space to free up.
  // Cell and orientation for a new ancilla, or cell -1.
  std::pair<int, Orientation> choose_ancilla_cell(const std::vector<Hint> &hints) const {
    std::vector<std::uint8_t> free(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      free[i] = cell_free(static_cast<int>(i));
    }
    std::vector<int> ends;
    std::vector<std::array<int, 2>> elbows;
    // Total connection length from cell i, or -1. `free` must already have
    // i marked occupied; `dists` must come from the same mask to be exact.
    auto connection = [&](int i, Orientation o, const std::vector<std::vector<int>> &dists) {
      Patch self;
      self.cell = i;
      self.orientation = o;
      int s = 0;
      for (std::size_t k = 0; k < hints.size(); ++k) {
        endpoints(self, hints[k].self_op, ends, &elbows, free);
        int d = -1;
        for (int j : ends) {
          if (dists[k][j] >= 0 && (d < 0 || dists[k][j] < d)) d = dists[k][j];
        }
        if (d < 0) return -1;
        s += d;
      }
      return s;
    };
    auto distances = [&] {
      std::vector<std::vector<int>> out;
      out.reserve(hints.size());
      for (const Hint &h : hints) out.push_back(free_distances(h, free));
      return out;
    };

    // Distances with every candidate still free are a lower bound; confirm
    // candidates in that order with the candidate itself blocked.
    using Candidate = std::tuple<int, int, Orientation>;  // score, cell, orientation
    const auto bound = distances();
    for (CellKind want : {CellKind::Ancilla, CellKind::Routing}) {
      std::vector<Candidate> order;
      for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
        if (layout_.kind(i) != want || !free[i] || !has_free_neighbor(i)) continue;
        free[i] = 0;
        for (Orientation o : {Orientation::Default, Orientation::Rotated}) {
          const int s = connection(i, o, bound);
          if (s >= 0) order.emplace_back(s, i, o);
          if (hints.empty()) break;
        }
        free[i] = 1;
      }
      std::sort(order.begin(), order.end());
      if (hints.empty() && !order.empty()) {
        return {std::get<1>(order.front()), Orientation::Default};
      }
      std::optional<Candidate> best;
      for (const auto &[lower, i, o] : order) {
        if (best && lower > std::get<0>(*best)) break;
        free[i] = 0;
        const int s = connection(i, o, distances());
        free[i] = 1;
        if (s < 0) continue;
        const Candidate c{s, i, o};
        if (!best || c < *best) best = c;
      }
      if (best) return {std::get<1>(*best), std::get<2>(*best)};
    }
    return {-1, Orientation::Default};
  }

  // The queued magic state with the shortest merge space to its partners;
  // states that cannot reach a partner now are passed over.
  int choose_magic_cell(const std::vector<Hint> &hints) const {
    std::vector<std::uint8_t> free(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      free[i] = cell_free(static_cast<int>(i));
    }
    std::vector<std::vector<int>> dists;
    for (const Hint &h : hints) dists.push_back(free_distances(h, free));
    std::vector<int> ends;
    std::vector<std::array<int, 2>> elbows;
    int best = -1;
    int best_score = 0;
    for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
      if (!cells_[i].queued || cells_[i].act_until > now_) continue;
      Patch self;
      self.cell = i;
      self.orientation = cells_[i].queued_orientation;
      int s = 0;
      for (std::size_t k = 0; k < hints.size() && s >= 0; ++k) {
        endpoints(self, hints[k].self_op, ends, &elbows, free);
        int d = -1;
        for (int j : ends) {
          if (dists[k][j] >= 0 && (d < 0 || dists[k][j] < d)) d = dists[k][j];
        }
        s = d < 0 ? -1 : s + d;
      }
      if (s < 0) continue;
      if (best < 0 || s < best_score) {
        best = i;
        best_score = s;
      }
    }
    return best;
  }

  void place_pending(PatchId id, const std::vector<Hint> &hints) {
    Pending p = std::move(pending_.at(id));
    pending_.erase(id);
    const bool from_queue = p.magic && !config_.instant_magic;
    Failure why = from_queue ? Failure::Magic : Failure::Cell;
    wait_until(p.earliest, p.seq, p.instr);
    while (true) {
      const auto [cell, orientation] =
          from_queue ? std::pair{choose_magic_cell(hints), Orientation::Default}
                     : choose_ancilla_cell(hints);
      if (cell >= 0) {
        Patch patch;
        patch.cell = cell;
        patch.orientation = orientation;
        patch.state = p.magic ? "magic" : (p.state == InitState::Plus ? "plus" : "zero");
        if (from_queue) {
          patch.orientation = cells_[cell].queued_orientation;
          cells_[cell].queued = false;
          --queued_in_[cells_[cell].queued_region];
          cells_[cell].queued_region = -1;
          ++stats_.magic_states_consumed;
        }
        patch.busy_until = now_ + config_.init_duration;
        cells_[cell].patch = id;
        patches_.emplace(id, patch);
        occupy_patch(id, p.seq, op_name(p.instr), config_.init_duration);
        event(p.seq, p.instr);
        return;
      }
      stall(why, p.seq, p.instr);
    }
  }

  void init_data(std::uint64_t seq, const Instruction &instr, PatchId id,
                 InitState state, std::int64_t earliest) {
    const int cell = layout_.index(layout_.qubit_cells()[id]);
    wait_until(earliest, seq, instr);
    while (cells_[cell].act_until > now_) stall(Failure::Busy, seq, instr);
    Patch p;
    p.cell = cell;
    p.data = true;
    p.state = state == InitState::Plus ? "plus" : "zero";
    p.busy_until = now_ + config_.init_duration;
    patches_[id] = p;
    cells_[cell].patch = id;
    data_state_[id] = kLive;
    occupy_patch(id, seq, "INIT", config_.init_duration);
    event(seq, instr);
  }

  // ------------------------------------------------------------ scheduling

  void wait_until(std::int64_t earliest, std::uint64_t seq,
                  const Instruction &instr) {
    while (now_ < earliest) stall(Failure::Busy, seq, instr);
  }

  void place(std::uint64_t seq, const Instruction &instr, const Instruction &in,
             std::int64_t earliest) {
    wait_until(earliest, seq, instr);
    while (true) {
      const Failure f = try_place(seq, instr, in);
      if (f == Failure::None) return;
      stall(f, seq, instr);
    }
  }

  bool patch_idle(PatchId id) const {
    const Patch &p = patches_.at(id);
    return p.busy_until <= now_ && cells_[p.cell].act_until <= now_;
  }

  int free_neighbor(int cell) const {
    for (Coord n : neighbors(layout_, layout_.coord(cell))) {
      const int j = layout_.index(n);
      if (cell_free(j)) return j;
    }
    return -1;
  }

  Failure try_place(std::uint64_t seq, const Instruction &instr,
                    const Instruction &in) {
    for (PatchId id : patches_of(in)) {
      if (!patch_idle(id)) return Failure::Busy;
    }
    const char *op = op_name(instr);
    if (in.is<MeasureSingle>()) {
      const PatchId id = in.as<MeasureSingle>().patch;
      occupy_patch(id, seq, op, config_.measure_duration);
      record_outcome(seq, now_ + config_.measure_duration);
      kill_patch(id);
    } else if (in.is<MultiBodyMeasure>()) {
      std::vector<int> route;
      if (!route_mbm(in.as<MultiBodyMeasure>(), route, false)) {
        // Queued magic states only leave when consumed, so waiting for them
        // may never end; discard the ones in the way instead.
        if (!route_mbm(in.as<MultiBodyMeasure>(), route, true)) return Failure::Route;
        for (int c : route) {
          Cell &cell = cells_[c];
          if (!cell.queued) continue;
          cell.queued = false;
          --queued_in_[cell.queued_region];
          cell.queued_region = -1;
          ++stats_.magic_states_discarded;
        }
      }
      for (const auto &o : in.as<MultiBodyMeasure>().operands) {
        occupy_patch(o.patch, seq, op, config_.mbm_duration);
      }
      for (int c : route) occupy_cell(c, ActivityKind::Route, seq, op, config_.mbm_duration);
      record_outcome(seq, now_ + config_.mbm_duration);
    } else if (in.is<TransversalPauli>()) {
      occupy_patch(in.as<TransversalPauli>().patch, seq, op,
                   config_.transversal_duration);
    } else if (in.is<TransversalHadamard>()) {
      const PatchId id = in.as<TransversalHadamard>().patch;
      Patch &p = patches_.at(id);
      p.orientation = flip(p.orientation);
      occupy_patch(id, seq, op, config_.transversal_duration);
    } else if (in.is<BoundaryRotate>() || in.is<SGate>()) {
      const bool rot = in.is<BoundaryRotate>();
      const PatchId id = rot ? in.as<BoundaryRotate>().patch : in.as<SGate>().patch;
      Patch &p = patches_.at(id);
      const int extra = free_neighbor(p.cell);
      if (extra < 0) return Failure::Cell;
      const int dur = rot ? config_.rotate_duration : config_.sgate_duration;
      if (rot) p.orientation = flip(p.orientation);
      occupy_patch(id, seq, op, dur);
      occupy_cell(extra, ActivityKind::Busy, seq, op, dur);
    } else {
      throw Error(ErrorKind::Internal, "unexpected instruction in slicer");
    }
    event(seq, instr);
    return Failure::None;
  }

  void occupy_patch(PatchId id, std::uint64_t seq, const char *op, int dur) {
    Patch &p = patches_.at(id);
    p.busy_until = std::max(p.busy_until, now_ + dur);
    Cell &c = cells_[p.cell];
    c.act = render_patch(id, p);
    c.act.seq = static_cast<std::int64_t>(seq);
    c.act.op = op;
    c.act_start = now_;
    c.act_until = now_ + dur;
  }

  void occupy_cell(int cell, ActivityKind kind, std::uint64_t seq,
                   const char *op, int dur) {
    Cell &c = cells_[cell];
    c.act = CellActivity{};
    c.act.kind = kind;
    c.act.seq = static_cast<std::int64_t>(seq);
    c.act.op = op;
    c.act_start = now_;
    c.act_until = now_ + dur;
  }

  void kill_patch(PatchId id) {
    Patch &p = patches_.at(id);
    cells_[p.cell].patch = kNoPatch;
    if (id < data_state_.size() && data_state_[id] != kAncillaId) {
      data_state_[id] = kMeasured;
    }
    patches_.erase(id);
  }

  void event(std::uint64_t seq, const Instruction &instr) {
    progress_ = now_;
    if (config_.render) slice_.events.push_back({seq, instr});
  }

  CellActivity render_patch(PatchId id, const Patch &p) const {
    CellActivity a;
    a.kind = p.data ? ActivityKind::Qubit : ActivityKind::Ancilla;
    a.patch = id;
    a.orientation = p.orientation;
    a.state = p.state;
    return a;
  }

  // --------------------------------------------------------------- routing

  // Cells next to the patch boundary that carries `op`.
  void endpoints(const Patch &p, Pauli op, std::vector<int> &out,
                 std::vector<std::array<int, 2>> *elbows,
                 const std::vector<std::uint8_t> &passable) const {
    out.clear();
    if (elbows) elbows->clear();
    const Coord c = layout_.coord(p.cell);
    const bool rough_ns = p.orientation == Orientation::Default;
    auto ok = [&](Coord n) {
      return layout_.in_bounds(n) && passable[layout_.index(n)];
    };
    if (op == Pauli::Y) {
      for (int dr : {-1, 1}) {
        for (int dc : {-1, 1}) {
          const Coord corner{c.row + dr, c.col + dc};
          const Coord vert{c.row + dr, c.col};
          const Coord horiz{c.row, c.col + dc};
          if (ok(corner) && ok(vert) && ok(horiz)) {
            out.push_back(layout_.index(corner));
            elbows->push_back({layout_.index(vert), layout_.index(horiz)});
          }
        }
      }
      return;
    }
    const bool want_ns = (op == Pauli::X) == rough_ns;
    if (want_ns) {
      for (Coord n : {Coord{c.row - 1, c.col}, Coord{c.row + 1, c.col}}) {
        if (ok(n)) out.push_back(layout_.index(n));
      }
    } else {
      for (Coord n : {Coord{c.row, c.col - 1}, Coord{c.row, c.col + 1}}) {
        if (ok(n)) out.push_back(layout_.index(n));
      }
    }
  }

  bool all_free(const std::vector<int> &cells) const {
    for (int c : cells) {
      if (!cell_free(c)) return false;
    }
    return true;
  }

  bool route_mbm(const MultiBodyMeasure &m, std::vector<int> &route, bool through_queue) {
    if (!through_queue) ++stats_.routes;
    bool simple = m.operands.size() == 2;
    for (const auto &o : m.operands) simple = simple && o.op != Pauli::Y;

    std::vector<std::uint8_t> passable(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const Cell &c = cells_[i];
      passable[i] = cell_free(static_cast<int>(i)) ||
                    (through_queue && c.queued && c.act_until <= now_);
    }

    if (simple && config_.route_cache && !through_queue) {
      const Patch &a = patches_.at(m.operands[0].patch);
      const Patch &b = patches_.at(m.operands[1].patch);
      const std::uint64_t key =
          (static_cast<std::uint64_t>(a.cell) << 34) |
          (static_cast<std::uint64_t>(b.cell) << 4) |
          (static_cast<std::uint64_t>(m.operands[0].op == Pauli::X) << 3) |
          (static_cast<std::uint64_t>(a.orientation == Orientation::Rotated) << 2) |
          (static_cast<std::uint64_t>(m.operands[1].op == Pauli::X) << 1) |
          static_cast<std::uint64_t>(b.orientation == Orientation::Rotated);
      auto it = route_cache_.find(key);
      if (it == route_cache_.end()) {
        std::vector<int> src;
        std::vector<int> dst;
        endpoints(a, m.operands[0].op, src, nullptr, routable_);
        endpoints(b, m.operands[1].op, dst, nullptr, routable_);
        it = route_cache_.emplace(key, static_router_.route(routable_, src, dst))
                 .first;
      } else {
        ++stats_.route_cache_hits;
      }
      // A free copy of the obstacle-free optimum is exactly what the dynamic
      // search would return, so reuse cannot change the schedule.
      if (!it->second.empty() && all_free(it->second)) {
        route = it->second;
        return true;
      }
      if (it->second.empty()) return false;
    }

    std::vector<int> tree;
    std::vector<int> src;
    std::vector<int> dst;
    std::vector<std::array<int, 2>> src_elbows;
    std::vector<std::array<int, 2>> dst_elbows;
    std::vector<int> claimed;
    auto claim_elbows = [&](const std::vector<int> &ends,
                            const std::vector<std::array<int, 2>> &elbows,
                            int end_cell, const std::vector<int> &path) {
      for (std::size_t k = 0; k < ends.size(); ++k) {
        if (ends[k] != end_cell) continue;
        for (int e : elbows[k]) {
          if (std::find(path.begin(), path.end(), e) != path.end()) return false;
          if (!passable[e]) return false;
        }
        for (int e : elbows[k]) {
          claimed.push_back(e);
          passable[e] = 0;
        }
        return true;
      }
      return true;
    };

    const Patch &p0 = patches_.at(m.operands[0].patch);
    const Patch &p1 = patches_.at(m.operands[1].patch);
    for (int attempt = 0; attempt < 8; ++attempt) {
      endpoints(p0, m.operands[0].op, src, &src_elbows, passable);
      endpoints(p1, m.operands[1].op, dst, &dst_elbows, passable);
      const std::vector<int> path = router_.route(passable, src, dst);
      if (path.empty()) return false;
      const bool y0 = m.operands[0].op == Pauli::Y;
      const bool y1 = m.operands[1].op == Pauli::Y;
      const std::size_t mark = claimed.size();
      bool ok = true;
      if (y0) ok = claim_elbows(src, src_elbows, path.front(), path);
      if (ok && y1) ok = claim_elbows(dst, dst_elbows, path.back(), path);
      if (ok) {
        tree = path;
        break;
      }
      // The chosen corner's elbows clash with its own path; rule it out.
      for (std::size_t k = mark; k < claimed.size(); ++k) passable[claimed[k]] = 1;
      claimed.resize(mark);
      passable[y0 ? path.front() : path.back()] = 0;
    }
    if (tree.empty()) return false;
    for (int c : tree) passable[c] = 0;

    for (std::size_t k = 2; k < m.operands.size(); ++k) {
      const Patch &pk = patches_.at(m.operands[k].patch);
      bool done = false;
      for (int attempt = 0; attempt < 8 && !done; ++attempt) {
        for (int c : tree) passable[c] = 1;
        endpoints(pk, m.operands[k].op, src, &src_elbows, passable);
        const std::vector<int> path = router_.route(passable, src, tree);
        for (int c : tree) passable[c] = 0;
        if (path.empty()) return false;
        if (m.operands[k].op == Pauli::Y) {
          const std::size_t mark = claimed.size();
          if (!claim_elbows(src, src_elbows, path.front(), path)) {
            for (std::size_t j = mark; j < claimed.size(); ++j) {
              passable[claimed[j]] = 1;
            }
            claimed.resize(mark);
            passable[path.front()] = 0;
            continue;
          }
        }
        for (std::size_t j = 0; j + 1 < path.size(); ++j) {
          tree.push_back(path[j]);
          passable[path[j]] = 0;
        }
        done = true;
      }
      if (!done) return false;
    }
    route = tree;
    route.insert(route.end(), claimed.begin(), claimed.end());
    return true;
  }

  // ---------------------------------------------------------------- time

  void stall(Failure why, std::uint64_t seq, const Instruction &instr) {
    ++stats_.stalls;
    advance();
    const std::int64_t limit = config_.distill_period + max_duration_ + 1;
    if (now_ - progress_ > limit) {
      const std::string what = "instruction #" + std::to_string(seq) + " '" +
                               serialize_lli(instr) + "' could not be placed for " +
                               std::to_string(now_ - progress_) + " slices: ";
      switch (why) {
        case Failure::Route:
          throw Error(ErrorKind::NoRoute, what + "no free route between the patch boundaries");
        case Failure::Magic:
          throw Error(ErrorKind::Deadlock, what + "no magic state becomes available");
        case Failure::Cell:
          throw Error(ErrorKind::Deadlock, what + "no free cell next to the patch");
        default:
          throw Error(ErrorKind::Deadlock, what + "resources never free up");
      }
    }
  }

  void advance() {
    finalize();
    ++now_;
    if (!config_.instant_magic) tick_distillation();
  }

  void tick_distillation() {
    const auto &regions = layout_.regions();
    for (std::size_t r = 0; r < regions.size(); ++r) {
      if (remaining_[r] > 0) {
        --remaining_[r];
        continue;
      }
      if (config_.max_queued_per_region > 0 &&
          queued_in_[r] >= config_.max_queued_per_region) {
        continue;
      }
      for (Coord out : regions[r].outputs) {
        const int i = layout_.index(out);
        if (!cell_free(i) || next_to_patch(i)) continue;
        Cell &c = cells_[i];
        c.queued = true;
        c.queued_region = static_cast<int>(r);
        ++queued_in_[r];
        // Magic states are consumed through their Z (smooth) boundary, so
        // put it on the axis with more routing space.
        int east_west = 0;
        int north_south = 0;
        for (Coord n : neighbors(layout_, out)) {
          if (!routable_[layout_.index(n)]) continue;
          ++(n.row == out.row ? east_west : north_south);
        }
        c.queued_orientation =
            north_south > east_west ? Orientation::Rotated : Orientation::Default;
        remaining_[r] = config_.distill_period - 1;
        ++stats_.magic_states_produced;
        break;
      }
    }
  }

  void finalize() {
    ++stats_.slices;
    std::uint64_t used = 0;
    std::uint64_t queued = 0;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const Cell &c = cells_[i];
      if (c.queued) ++queued;
      if (routable_[i] && (c.patch != kNoPatch || c.queued || c.act_until > now_)) {
        ++used;
      }
    }
    ++stats_.routing_occupancy[used];
    ++stats_.magic_queue[queued];
    stats_.max_magic_queue = std::max(stats_.max_magic_queue, queued);
    if (config_.render) {
      slice_.index = static_cast<std::uint64_t>(now_);
      slice_.cells.resize(cells_.size());
      for (std::size_t i = 0; i < cells_.size(); ++i) {
        slice_.cells[i] = render(static_cast<int>(i));
      }
      if (visitor_) visitor_(slice_);
      slice_.events.clear();
    } else if (visitor_) {
      slice_.index = static_cast<std::uint64_t>(now_);
      visitor_(slice_);
    }
  }

  CellActivity render(int i) const {
    const Cell &c = cells_[i];
    if (layout_.kind(i) == CellKind::Distillation) {
      CellActivity a;
      a.kind = ActivityKind::Distillation;
      a.region = layout_.region_of(layout_.coord(i));
      a.countdown = config_.instant_magic ? 0 : remaining_[a.region];
      return a;
    }
    const bool active = c.act_start <= now_ && now_ < c.act_until;
    CellActivity a;
    if (c.patch != kNoPatch) {
      a = render_patch(c.patch, patches_.at(c.patch));
      if (active) {
        a.seq = c.act.seq;
        a.op = c.act.op;
      }
    } else if (active) {
      a = c.act;
    } else if (c.queued) {
      a.kind = ActivityKind::MagicQueued;
      a.region = c.queued_region;
      a.orientation = c.queued_orientation;
    }
    return a;
  }

  const Layout &layout_;
  const SlicerConfig &config_;
  const SliceVisitor &visitor_;
  Router router_;
  Router static_router_;
  std::vector<Cell> cells_;
  std::vector<std::uint8_t> routable_;
  enum : std::uint8_t { kUntouched, kLive, kMeasured, kAncillaId };
  std::vector<std::uint8_t> data_state_;  // per Q cell id
  std::vector<int> queued_in_;            // queued magic states per region
  std::vector<int> remaining_;
  std::unordered_map<PatchId, Patch> patches_;
  std::unordered_map<PatchId, Pending> pending_;
  std::unordered_map<std::uint64_t, std::vector<int>> route_cache_;
  // Last outcome_window measurements as (seq, ready slice), a ring buffer
  // allocated up front so memory stays flat.
  std::vector<std::pair<std::uint64_t, std::int64_t>> outcomes_;
  std::uint64_t recorded_ = 0;
  std::uint64_t oldest_outcome_ = 0;
  std::int64_t now_ = 0;
  std::int64_t progress_ = 0;
  int max_duration_ = 1;
  bool started_ = false;
  Slice slice_;
  RunStats stats_;
};

}  // namespace

RunStats run_stream(const LliSource &source, const Layout &layout,
                    const SliceVisitor &visitor, const SlicerConfig &config) {
  Slicer slicer(layout, config, visitor);
  std::deque<Instruction> window;
  bool exhausted = false;
  auto refill = [&] {
    while (!exhausted && window.size() <= config.lookahead) {
      auto next = source();
      if (!next) {
        exhausted = true;
        break;
      }
      window.push_back(std::move(*next));
    }
  };
  std::uint64_t seq = 0;
  refill();
  while (!window.empty()) {
    slicer.process(seq++, window.front(), window);
    window.pop_front();
    refill();
  }
  slicer.finish();
  return slicer.stats();
}

RunStats run_stream(const std::vector<Instruction> &instrs, const Layout &layout,
                    const SliceVisitor &visitor, const SlicerConfig &config) {
  std::size_t i = 0;
  return run_stream(
      [&]() -> std::optional<Instruction> {
        if (i >= instrs.size()) return std::nullopt;
        return instrs[i++];
      },
      layout, visitor, config);
}

}  // namespace surgec
