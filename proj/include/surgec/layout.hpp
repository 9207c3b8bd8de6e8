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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace surgec {

enum class CellKind : std::uint8_t { Qubit, Routing, Ancilla, Distillation };

struct Coord {
  int row = 0;
  int col = 0;
  auto operator<=>(const Coord &) const = default;
};

struct DistillationRegion {
  int id = 0;
  char digit = '0';
  std::vector<Coord> cells;    // reading order
  std::vector<Coord> outputs;  // 4-adjacent routing cells, reading order
};

/// A rectangular floorplan. Q cells hold logical qubits numbered in reading
/// order; r cells are routing space; A cells are preferred ancilla sites;
/// digit cells belong to distillation regions (4-connected components of one
/// digit, so one digit can name several regions).
class Layout {
 public:
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return kinds_.size(); }

  bool in_bounds(Coord c) const {
    return c.row >= 0 && c.col >= 0 && c.row < rows_ && c.col < cols_;
  }
  int index(Coord c) const { return c.row * cols_ + c.col; }
  Coord coord(int index) const { return {index / cols_, index % cols_}; }

  CellKind kind(Coord c) const { return kinds_[index(c)]; }
  CellKind kind(int index) const { return kinds_[index]; }
  /// Region id of a distillation cell, -1 otherwise.
  int region_of(Coord c) const { return region_of_[index(c)]; }
  /// Qubit number of a Q cell, -1 otherwise.
  int qubit_at(Coord c) const { return qubit_at_[index(c)]; }
  char symbol(Coord c) const { return symbols_[index(c)]; }

  const std::vector<Coord> &qubit_cells() const { return qubit_cells_; }
  const std::vector<DistillationRegion> &regions() const { return regions_; }
  const std::vector<std::string> &warnings() const { return warnings_; }

  std::size_t count(CellKind k) const;

  friend Layout parse_layout(std::string_view text);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<CellKind> kinds_;
  std::vector<char> symbols_;
  std::vector<int> region_of_;
  std::vector<int> qubit_at_;
  std::vector<Coord> qubit_cells_;
  std::vector<DistillationRegion> regions_;
  std::vector<std::string> warnings_;
};

/// Rows are lines; trailing whitespace and blank lines are ignored, short rows
/// are padded with routing cells, and a space inside a row is routing space.
/// Throws Error(Layout) naming row and column of an invalid character.
Layout parse_layout(std::string_view text);
Layout load_layout(const std::string &path);
std::string print_layout(const Layout &layout);

/// In-bounds up, left, right, down neighbours (index order).
std::vector<Coord> neighbors(const Layout &layout, Coord c);

}  // namespace surgec
