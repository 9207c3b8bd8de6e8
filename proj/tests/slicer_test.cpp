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

#include <fstream>
#include <random>
#include <sstream>

#include "properties.hpp"
#include "surgec/compiler.hpp"
#include "surgec/error.hpp"
#include "surgec/layout.hpp"
#include "surgec/router.hpp"
#include "surgec/slice_json.hpp"
#include "surgec/slicer.hpp"

namespace surgec {
namespace {

std::vector<Instruction> lli(const std::string &text) {
  std::vector<Instruction> out;
  std::istringstream in(text);
  LliReader r(in);
  while (auto i = r.next()) out.push_back(*i);
  return out;
}

std::vector<Slice> run(const std::vector<Instruction> &s, const Layout &l,
                       const SlicerConfig &cfg = {}, RunStats *stats = nullptr) {
  std::vector<Slice> out;
  const RunStats st = run_stream(s, l, [&](const Slice &x) { out.push_back(x); }, cfg);
  if (stats) *stats = st;
  return out;
}

std::size_t count_kind(const Slice &s, ActivityKind k) {
  std::size_t n = 0;
  for (const auto &c : s.cells) n += c.kind == k;
  return n;
}

std::size_t count_nulls(const std::string &json) {
  std::size_t n = 0;
  for (auto p = json.find("null"); p != std::string::npos; p = json.find("null", p + 1)) ++n;
  return n;
}

TEST(Router, LexicographicShortestPath) {
  Router r(3, 3);
  std::vector<std::uint8_t> open(9, 1);
  EXPECT_EQ(r.route(open, {0}, {8}), (std::vector<int>{0, 1, 2, 5, 8}));
  EXPECT_EQ(r.route(open, {4}, {4}), (std::vector<int>{4}));
  open[1] = open[4] = open[7] = 0;
  EXPECT_TRUE(r.route(open, {0}, {2}).empty());
  EXPECT_TRUE(r.route(open, {}, {2}).empty());
  open[4] = 1;
  open[3] = 1;
  EXPECT_EQ(r.route(open, {0, 6}, {5}), (std::vector<int>{0, 3, 4, 5}));
  EXPECT_EQ(r.searches(), 5u);
}

TEST(Slicer, IdleSliceRendersFreeCellsAsNull) {
  const Layout l = load_layout(SURGEC_LAYOUTS "/example1.txt");
  RunStats st;
  const auto slices = run(lli("PAULI 0 X\n"), l, {}, &st);
  ASSERT_EQ(slices.size(), 1u);
  EXPECT_EQ(count_kind(slices[0], ActivityKind::Free), 4u);
  EXPECT_EQ(count_kind(slices[0], ActivityKind::Qubit), 2u);
  EXPECT_EQ(count_nulls(slice_to_json(slices[0])), 4u);
  EXPECT_EQ(st.lli, 1u);
  EXPECT_EQ(st.cells, 6u);
}

TEST(Slicer, TwoPatchMergeUsesTheGap) {
  const Layout l = load_layout(SURGEC_LAYOUTS "/example1.txt");
  const auto slices = run(lli("MBM +Z0,Z1\n"), l);
  ASSERT_EQ(slices.size(), 1u);
  EXPECT_EQ(count_kind(slices[0], ActivityKind::Route), 1u);
  EXPECT_EQ(slices[0].at(0, 1).kind, ActivityKind::Route);
  EXPECT_EQ(slices[0].at(0, 1).seq, 0);
  // X boundaries face north and south; the route wraps below.
  const auto x = run(lli("MBM +X0,X1\n"), l);
  EXPECT_EQ(count_kind(x[0], ActivityKind::Route), 3u);
}

TEST(Slicer, SliceJsonShape) {
  const Layout l = load_layout(SURGEC_LAYOUTS "/example1.txt");
  const auto slices = run(lli("INIT 4 +\nMBM +Z0,Z1\n"), l);
  const std::string j = slice_to_json(slices.front());
  EXPECT_EQ(j.front(), '[');
  EXPECT_EQ(j.substr(0, 2), "[[");
  EXPECT_NE(j.find("\"kind\":\"qubit\""), std::string::npos);
  std::ostringstream arr, nd;
  {
    SliceJsonWriter a(arr, SliceFormat::Array), n(nd, SliceFormat::Ndjson);
    for (const auto &s : slices) {
      a.write(s);
      n.write(s);
    }
  }
  EXPECT_EQ(arr.str().front(), '[');
  const std::string lines = nd.str();
  EXPECT_EQ(std::count(lines.begin(), lines.end(), '\n'),
            static_cast<std::ptrdiff_t>(slices.size()));
}

TEST(SlicerProperty, RouteLengthMatchesBfs) {
  std::mt19937_64 rng(8);
  int checked = 0, unroutable = 0;
  while (checked < 50) {
    const auto r = props::check_route(rng);
    EXPECT_TRUE(r.repeat_identical) << r.layout;
    if (r.expected < 0) {
      ++unroutable;
      EXPECT_EQ(r.routed, -1) << r.layout;
      continue;
    }
    EXPECT_EQ(r.routed, r.expected) << r.layout;
    ++checked;
  }
  EXPECT_GT(unroutable, 0);
}

std::vector<Instruction> compiled_qft(std::uint64_t n) {
  auto cache = std::make_shared<ApproximationCache>();
  cache->load_file(SURGEC_TEST_DATA "/qft64_eps1e-10.cache");
  CompilerOptions opt;
  opt.approximation = {.epsilon = 1e-10, .cache = cache, .cache_only = true};
  return compile_circuit(parse_program(generate_qft(n)), opt);
}

std::string all_json(const std::vector<Slice> &slices) {
  std::string s;
  for (const auto &x : slices) s += slice_to_json(x) + "\n";
  return s;
}

TEST(Slicer, QftOnExampleLayoutIsDeterministic) {
  const Layout l = load_layout(SURGEC_LAYOUTS "/example2.txt");
  const auto stream = compiled_qft(3);
  RunStats a, b, c;
  const auto s1 = run(stream, l, {}, &a);
  const auto s2 = run(stream, l, {}, &b);
  SlicerConfig nocache;
  nocache.route_cache = false;
  const auto s3 = run(stream, l, nocache, &c);
  EXPECT_EQ(a.lli, stream.size());
  EXPECT_EQ(a.slices, s1.size());
  EXPECT_EQ(all_json(s1), all_json(s2));
  // The route cache only skips searches; it never changes the schedule.
  EXPECT_EQ(all_json(s1), all_json(s3));
  EXPECT_GT(a.route_cache_hits, 0u);
  EXPECT_EQ(c.route_cache_hits, 0u);
  EXPECT_GE(a.magic_states_produced, a.magic_states_consumed + a.magic_states_discarded);
  EXPECT_GT(a.magic_states_consumed, 0u);

  SlicerConfig quiet;
  quiet.render = false;
  const RunStats d = run_stream(stream, l, [](const Slice &) {}, quiet);
  EXPECT_EQ(d.slices, a.slices);
}

TEST(Slicer, MagicStatesComeFromDistillation) {
  const Layout l = load_layout(SURGEC_LAYOUTS "/example2.txt");
  RunStats st;
  const auto slices = run(lli("MAGIC 9\nMBM +Z0,Z9\nMEAS 9 X\n"), l, {}, &st);
  EXPECT_EQ(st.magic_states_consumed, 1u);
  EXPECT_GE(st.magic_states_produced, 1u);
  EXPECT_GE(st.stalls, 1u);
  bool saw_distillation = false;
  for (const auto &s : slices) {
    for (const auto &c : s.cells) {
      if (c.kind == ActivityKind::Distillation) {
        saw_distillation = true;
        EXPECT_GE(c.region, 0);
        EXPECT_GE(c.countdown, 0);
      }
    }
  }
  EXPECT_TRUE(saw_distillation);

  SlicerConfig instant;
  instant.instant_magic = true;
  RunStats fast;
  run(lli("MAGIC 9\nMBM +Z0,Z9\nMEAS 9 X\n"), l, instant, &fast);
  EXPECT_LT(fast.slices, st.slices);
}

TEST(Slicer, DataIdFirstUsedAsAncillaFreesItsCell) {
  const Layout l = load_layout(SURGEC_LAYOUTS "/example1.txt");
  const auto slices = run(lli("INIT 1 +\nMEAS 1 X\n"), l);
  ASSERT_FALSE(slices.empty());
  // Only Q cell 0 holds a data patch; cell 1 went to the ancilla.
  EXPECT_EQ(count_kind(slices.back(), ActivityKind::Qubit), 1u);
}

TEST(Slicer, Errors) {
  const Layout l = load_layout(SURGEC_LAYOUTS "/example1.txt");
  auto kind_of = [&](const std::string &text) {
    try {
      run(lli(text), l);
    } catch (const Error &e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  EXPECT_EQ(kind_of("MBM +Z0,Z7\n"), ErrorKind::UnknownPatch);
  EXPECT_EQ(kind_of("MEAS 0 Z\nH 0\n"), ErrorKind::DeadPatch);
  // No distillation region: a magic request can never be served.
  EXPECT_EQ(kind_of("MAGIC 5\n"), ErrorKind::Deadlock);
  const Layout walled = parse_layout("QAQ\n");
  EXPECT_THROW(run(lli("MBM +X0,X1\n"), walled), Error);
}

TEST(Slicer, MemoryDoesNotGrowWithStream) {
  const Layout l = load_layout(SURGEC_LAYOUTS "/12by12.txt");
  std::uint64_t n = 0;
  const LliSource src = [&]() -> std::optional<Instruction> {
    if (n >= 20000) return std::nullopt;
    MultiBodyMeasure m;
    m.operands = {{n % 20, Pauli::Z}, {(n + 1 + n / 20 % 19) % 20, Pauli::X}};
    ++n;
    return Instruction(m);
  };
  SlicerConfig cfg;
  cfg.render = false;
  const RunStats st = run_stream(src, l, [](const Slice &) {}, cfg);
  EXPECT_EQ(st.lli, 20000u);
  EXPECT_LE(st.peak_resident_slices, 2u);
}

}  // namespace
}  // namespace surgec
