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
#include <vector>

namespace surgec {

/// Shortest paths over a rows x cols grid with 4-connectivity and unit cell
/// cost. The distance buffers are allocated once and reset lazily, so a
/// search only touches the cells it visits.
///
/// Among shortest paths the result is the lexicographically smallest
/// sequence of cell indices: the smallest-index source at minimal distance,
/// then at each step the smallest-index neighbour one step closer.
class Router {
 public:
  Router(int rows, int cols);

  /// Path of cells from some source to some target (both inclusive; a cell in
  /// both sets gives a one-cell path). `passable[i]` != 0 marks usable cells;
  /// sources and targets must be passable too. Empty when unreachable.
  const std::vector<int> &route(const std::vector<std::uint8_t> &passable,
                                const std::vector<int> &sources,
                                const std::vector<int> &targets);

  std::uint64_t searches() const { return searches_; }

 private:
  int rows_;
  int cols_;
  std::vector<std::int32_t> dist_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint8_t> is_source_;
  std::vector<std::uint64_t> heap_;
  std::vector<int> path_;
  std::uint64_t searches_ = 0;
};

}  // namespace surgec
