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

#include "surgec/layout.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "surgec/error.hpp"

namespace surgec {

std::size_t Layout::count(CellKind k) const {
  return static_cast<std::size_t>(std::count(kinds_.begin(), kinds_.end(), k));
}

std::vector<Coord> neighbors(const Layout &layout, Coord c) {
  std::vector<Coord> out;
  out.reserve(4);
  for (Coord n : {Coord{c.row - 1, c.col}, Coord{c.row, c.col - 1},
                  Coord{c.row, c.col + 1}, Coord{c.row + 1, c.col}}) {
    if (layout.in_bounds(n)) out.push_back(n);
  }
  return out;
}

Layout parse_layout(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  // Source row numbers are kept for diagnostics.
  std::vector<std::pair<std::size_t, std::string>> rows;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!lines[i].empty()) rows.emplace_back(i + 1, std::move(lines[i]));
  }

  Layout l;
  l.rows_ = static_cast<int>(rows.size());
  for (const auto &r : rows) {
    l.cols_ = std::max(l.cols_, static_cast<int>(r.second.size()));
  }
  if (l.rows_ == 0) throw Error(ErrorKind::Layout, "layout is empty");
  const std::size_t n = static_cast<std::size_t>(l.rows_) * l.cols_;
  l.kinds_.assign(n, CellKind::Routing);
  l.symbols_.assign(n, 'r');
  l.region_of_.assign(n, -1);
  l.qubit_at_.assign(n, -1);

  for (int r = 0; r < l.rows_; ++r) {
    const std::string &line = rows[r].second;
    for (int c = 0; c < static_cast<int>(line.size()); ++c) {
      const char ch = line[c];
      const int i = r * l.cols_ + c;
      if (ch == 'Q') {
        l.kinds_[i] = CellKind::Qubit;
      } else if (ch == 'A') {
        l.kinds_[i] = CellKind::Ancilla;
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        l.kinds_[i] = CellKind::Distillation;
      } else if (ch != 'r' && ch != ' ' && ch != '\t') {
        throw Error(ErrorKind::Layout,
                    "invalid layout character '" + std::string(1, ch) +
                        "' at row " + std::to_string(rows[r].first) +
                        ", column " + std::to_string(c + 1));
      }
      l.symbols_[i] = (ch == ' ' || ch == '\t') ? 'r' : ch;
    }
  }

  for (int i = 0; i < static_cast<int>(n); ++i) {
    if (l.kinds_[i] == CellKind::Qubit) {
      l.qubit_at_[i] = static_cast<int>(l.qubit_cells_.size());
      l.qubit_cells_.push_back(l.coord(i));
    }
  }

  for (int i = 0; i < static_cast<int>(n); ++i) {
    if (l.kinds_[i] != CellKind::Distillation || l.region_of_[i] >= 0) continue;
    DistillationRegion region;
    region.id = static_cast<int>(l.regions_.size());
    region.digit = l.symbols_[i];
    std::vector<int> stack{i};
    l.region_of_[i] = region.id;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      region.cells.push_back(l.coord(cur));
      for (Coord nb : neighbors(l, l.coord(cur))) {
        const int j = l.index(nb);
        if (l.kinds_[j] == CellKind::Distillation && l.region_of_[j] < 0 &&
            l.symbols_[j] == region.digit) {
          l.region_of_[j] = region.id;
          stack.push_back(j);
        }
      }
    }
    std::sort(region.cells.begin(), region.cells.end());
    for (Coord c : region.cells) {
      for (Coord nb : neighbors(l, c)) {
        if (l.kind(nb) == CellKind::Routing) region.outputs.push_back(nb);
      }
    }
    std::sort(region.outputs.begin(), region.outputs.end());
    region.outputs.erase(std::unique(region.outputs.begin(), region.outputs.end()),
                         region.outputs.end());
    if (region.outputs.empty()) {
      const Coord c = region.cells.front();
      l.warnings_.push_back("distillation region " + std::to_string(region.id) +
                            " ('" + region.digit + "' at row " +
                            std::to_string(c.row + 1) + ", column " +
                            std::to_string(c.col + 1) +
                            ") has no adjacent routing cell and can never emit");
    }
    l.regions_.push_back(std::move(region));
  }
  return l;
}

Layout load_layout(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open layout file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_layout(ss.str());
}

std::string print_layout(const Layout &layout) {
  std::string out;
  for (int r = 0; r < layout.rows(); ++r) {
    for (int c = 0; c < layout.cols(); ++c) out += layout.symbol({r, c});
    out += '\n';
  }
  return out;
}

}  // namespace surgec
