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

#include "surgec/router.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace surgec {

namespace {
constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max();

// Heap entries pack (distance, cell) so that comparison orders by distance
// first and cell index second.
std::uint64_t pack(std::int32_t d, int cell) {
  return (static_cast<std::uint64_t>(d) << 32) | static_cast<std::uint32_t>(cell);
}
}  // namespace

Router::Router(int rows, int cols)
    : rows_(rows),
      cols_(cols),
      dist_(static_cast<std::size_t>(rows) * cols, kInf),
      stamp_(static_cast<std::size_t>(rows) * cols, 0),
      is_source_(static_cast<std::size_t>(rows) * cols, 0) {}

const std::vector<int> &Router::route(const std::vector<std::uint8_t> &passable,
                                      const std::vector<int> &sources,
                                      const std::vector<int> &targets) {
  ++searches_;
  path_.clear();
  if (sources.empty() || targets.empty()) return path_;
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  auto dist = [&](int i) { return stamp_[i] == epoch_ ? dist_[i] : kInf; };
  auto relax = [&](int i, std::int32_t d) {
    if (d < dist(i)) {
      stamp_[i] = epoch_;
      dist_[i] = d;
      heap_.push_back(pack(d, i));
      std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
    }
  };

  for (int s : sources) is_source_[s] = 1;
  heap_.clear();
  for (int t : targets) {
    if (passable[t]) relax(t, 0);
  }

  int best = -1;
  std::int32_t best_d = kInf;
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
    const std::uint64_t top = heap_.back();
    heap_.pop_back();
    const auto d = static_cast<std::int32_t>(top >> 32);
    const int u = static_cast<int>(top & 0xffffffffu);
    if (d != dist(u)) continue;
    if (d > best_d) break;
    if (is_source_[u] && (best < 0 || u < best)) {
      best = u;
      best_d = d;
    }
    const int r = u / cols_;
    const int c = u % cols_;
    if (r > 0 && passable[u - cols_]) relax(u - cols_, d + 1);
    if (c > 0 && passable[u - 1]) relax(u - 1, d + 1);
    if (c + 1 < cols_ && passable[u + 1]) relax(u + 1, d + 1);
    if (r + 1 < rows_ && passable[u + cols_]) relax(u + cols_, d + 1);
  }
  for (int s : sources) is_source_[s] = 0;
  if (best < 0) return path_;

  // Walk downhill, always to the smallest-index neighbour. Every cell closer
  // than best_d has been settled, so its distance is final.
  int u = best;
  path_.push_back(u);
  for (std::int32_t d = best_d; d > 0; --d) {
    const int r = u / cols_;
    const int c = u % cols_;
    int next = -1;
    for (int v : {r > 0 ? u - cols_ : -1, c > 0 ? u - 1 : -1,
                  c + 1 < cols_ ? u + 1 : -1, r + 1 < rows_ ? u + cols_ : -1}) {
      if (v >= 0 && passable[v] && dist(v) == d - 1) {
        next = v;
        break;
      }
    }
    u = next;
    path_.push_back(u);
  }
  return path_;
}

}  // namespace surgec
