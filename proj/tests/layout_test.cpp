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

#include <gtest/gtest.h>

#include "surgec/error.hpp"
#include "surgec/layout.hpp"

namespace surgec {
namespace {

TEST(Layout, SmallExample) {
  const Layout l = load_layout(SURGEC_LAYOUTS "/example1.txt");
  EXPECT_EQ(l.rows(), 2);
  EXPECT_EQ(l.cols(), 3);
  EXPECT_EQ(l.count(CellKind::Qubit), 2u);
  EXPECT_EQ(l.count(CellKind::Routing), 4u);
  EXPECT_EQ(l.qubit_cells(), (std::vector<Coord>{{0, 0}, {0, 2}}));
  EXPECT_EQ(l.qubit_at({0, 2}), 1);
  EXPECT_TRUE(l.regions().empty());
  EXPECT_EQ(print_layout(l), "QrQ\nrrr\n");
}

TEST(Layout, RegionsAndOutputs) {
  const Layout l = load_layout(SURGEC_LAYOUTS "/example2.txt");
  EXPECT_EQ(l.rows(), 7);
  EXPECT_EQ(l.cols(), 10);
  EXPECT_EQ(l.count(CellKind::Qubit), 7u);
  EXPECT_EQ(l.count(CellKind::Ancilla), 1u);
  EXPECT_EQ(l.count(CellKind::Distillation), 36u);
  EXPECT_EQ(l.count(CellKind::Routing), 26u);
  ASSERT_EQ(l.regions().size(), 4u);
  const auto &r = l.regions();
  EXPECT_EQ(r[0].digit, '4');
  EXPECT_EQ(r[0].cells.size(), 9u);
  EXPECT_EQ(r[0].outputs,
            (std::vector<Coord>{{0, 6}, {1, 6}, {2, 6}, {3, 7}, {3, 8}, {3, 9}}));
  EXPECT_EQ(r[1].digit, '1');
  EXPECT_EQ(r[1].outputs,
            (std::vector<Coord>{{3, 1}, {3, 2}, {3, 3}, {4, 0}, {5, 0}, {6, 0}}));
  EXPECT_EQ(r[2].outputs, (std::vector<Coord>{{3, 4}, {3, 5}, {3, 6}}));
  EXPECT_EQ(r[3].outputs, (std::vector<Coord>{{3, 7}, {3, 8}, {3, 9}}));
  EXPECT_EQ(l.region_of({5, 5}), 2);
  EXPECT_EQ(l.region_of({3, 5}), -1);
  EXPECT_TRUE(l.warnings().empty());
}

TEST(Layout, TwelveByTwelve) {
  const Layout l = load_layout(SURGEC_LAYOUTS "/12by12.txt");
  EXPECT_EQ(l.rows(), 12);
  EXPECT_EQ(l.cols(), 12);
  EXPECT_EQ(l.count(CellKind::Qubit), 20u);
  EXPECT_EQ(l.count(CellKind::Ancilla), 3u);
  EXPECT_EQ(l.regions().size(), 4u);
  for (const auto &r : l.regions()) EXPECT_EQ(r.cells.size(), 4u);
}

TEST(Layout, ShortRowsArePaddedWithRouting) {
  const Layout l = parse_layout("Q\nrrrA\n\n  Q\n");
  EXPECT_EQ(l.rows(), 3);
  EXPECT_EQ(l.cols(), 4);
  EXPECT_EQ(l.kind(Coord{0, 3}), CellKind::Routing);
  EXPECT_EQ(l.kind(Coord{2, 0}), CellKind::Routing);
  EXPECT_EQ(l.kind(Coord{2, 2}), CellKind::Qubit);
  EXPECT_EQ(l.qubit_at({2, 2}), 1);
}

TEST(Layout, SameDigitDisconnectedIsTwoRegions) {
  const Layout l = parse_layout("11r11\n");
  ASSERT_EQ(l.regions().size(), 2u);
  EXPECT_EQ(l.regions()[0].outputs, (std::vector<Coord>{{0, 2}}));
  EXPECT_EQ(l.regions()[1].outputs, (std::vector<Coord>{{0, 2}}));
  // Adjacent different digits are separate regions too.
  EXPECT_EQ(parse_layout("12\nrr\n").regions().size(), 2u);
}

TEST(Layout, EnclosedRegionWarns) {
  const Layout l = parse_layout("QQQ\nQ5Q\nQQQ\n");
  ASSERT_EQ(l.warnings().size(), 1u);
  EXPECT_NE(l.warnings()[0].find("row 2, column 2"), std::string::npos);
}

TEST(Layout, Errors) {
  try {
    parse_layout("rrr\nrxr\n");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Layout);
    EXPECT_NE(std::string(e.what()).find("row 2, column 2"), std::string::npos);
  }
  EXPECT_THROW(parse_layout("\n\n"), Error);
  try {
    load_layout("/nonexistent/layout.txt");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
}

TEST(Layout, Neighbours) {
  const Layout l = parse_layout("rrr\nrrr\n");
  EXPECT_EQ(neighbors(l, {0, 0}), (std::vector<Coord>{{0, 1}, {1, 0}}));
  EXPECT_EQ(neighbors(l, {1, 1}).size(), 3u);
}

}  // namespace
}  // namespace surgec
