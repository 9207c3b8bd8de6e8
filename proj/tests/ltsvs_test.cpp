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

#include <random>
#include <set>
#include <sstream>

#include "properties.hpp"
#include "surgec/dense.hpp"
#include "surgec/error.hpp"
#include "surgec/ltsvs.hpp"
#include "surgec/verify.hpp"

namespace surgec {
namespace {

std::vector<Instruction> lli(const std::string &text) {
  std::vector<Instruction> out;
  std::istringstream in(text);
  LliReader r(in);
  while (auto i = r.next()) out.push_back(*i);
  return out;
}

TEST(LtsvsProperty, AgreesWithDenseSimulator) {
  for (int trial = 0; trial < 200; ++trial) {
    const PatchId patches = 2 + trial % 5;
    const PatchId implicit = trial % 3 == 0 ? 0 : 2;
    const auto r = props::compare_simulators(trial, patches, implicit, 10 + trial % 40);
    ASSERT_TRUE(r.outcomes_agree) << "trial " << trial << " " << r.where;
    ASSERT_LT(r.distance, 1e-9) << "trial " << trial;
  }
}

TEST(Ltsvs, GroupsStayLazy) {
  LazyState s;
  const auto stream = lli(
      "INIT 0 +\nINIT 1 0\nINIT 2 +\nINIT 3 0\n"
      "MBM +Z0,Z1\n"   // entangles 0 and 1 only
      "MEAS 0 X\n");
  const auto choose = seeded_chooser(1);
  for (std::uint64_t i = 0; i < stream.size(); ++i) {
    s.apply(i, stream[i], choose);
    if (i == 3) EXPECT_EQ(s.groups().size(), 4u);
    if (i == 4) EXPECT_EQ(s.largest_group(), 2u);
  }
  EXPECT_FALSE(s.live(0));
  EXPECT_EQ(s.group_of(1).members.size(), 1u);
  EXPECT_EQ(s.measurements(), 2u);
  EXPECT_EQ(recognize_state(s.group_of(2)), StateTag::Plus);
}

TEST(Ltsvs, RecognisesTaggedStates) {
  const double r = std::sqrt(0.5);
  const Amplitude i{0, 1};
  const Amplitude m = std::polar(1.0, M_PI / 4);
  const std::pair<std::vector<Amplitude>, StateTag> cases[] = {
      {{1, 0}, StateTag::Zero},      {{0, -1}, StateTag::One},
      {{r, r}, StateTag::Plus},      {{r * i, -r * i}, StateTag::Minus},
      {{r, r * m}, StateTag::Magic}, {{r, r * i}, StateTag::YPlus},
      {{r, -r * i}, StateTag::YMinus}};
  for (const auto &[amps, tag] : cases) {
    EXPECT_EQ(recognize_state({{7}, amps}), tag) << to_string(tag);
  }
  EXPECT_FALSE(recognize_state({{7}, {0.6, 0.8}}).has_value());
  EXPECT_FALSE(recognize_state({{1, 2}, {1, 0, 0, 0}}).has_value());
}

TEST(Ltsvs, ConditionalsAndOutcomes) {
  LazyState s;
  const auto stream = lli("INIT 0 +\nMEAS 0 X\nINIT 1 0\nIF 1 0 PAULI 1 X\nIF 1 1 H 1\n");
  const auto choose = seeded_chooser(3);
  for (std::uint64_t i = 0; i < stream.size(); ++i) s.apply(i, stream[i], choose);
  EXPECT_EQ(s.outcome(1), 0);  // |+> measured in X is deterministic
  EXPECT_EQ(recognize_state(s.group_of(1)), StateTag::One);

  LazyState bad;
  EXPECT_THROW(bad.apply(0, *parse_lli("IF 5 1 H 0"), choose), Error);
}

TEST(Ltsvs, Errors) {
  const auto choose = seeded_chooser(1);
  LazyState s({.implicit_patches = 2});
  s.apply(0, *parse_lli("MEAS 0 Z"), choose);
  try {
    s.apply(1, *parse_lli("H 0"), choose);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::DeadPatch);
  }
  try {
    s.apply(2, *parse_lli("H 9"), choose);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownPatch);
  }
  s.apply(3, *parse_lli("H 1"), choose);
  EXPECT_THROW(s.apply(4, *parse_lli("INIT 1 0"), choose), Error);  // 1 is live

  LazyState small({.max_amplitudes = 4});
  for (int p = 0; p < 3; ++p) small.apply(p, Init{static_cast<PatchId>(p), InitState::Plus}, choose);
  small.apply(3, *parse_lli("MBM +Z0,Z1"), choose);
  try {
    small.apply(4, *parse_lli("MBM +Z1,Z2"), choose);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(Ltsvs, ChoosersAreDeterministic) {
  const auto a = seeded_chooser(42), b = seeded_chooser(42);
  for (std::uint64_t seq = 0; seq < 100; ++seq) EXPECT_EQ(a(seq, 0.5), b(seq, 0.5));
  EXPECT_EQ(a(7, 1.0), 0);
  EXPECT_EQ(a(7, 0.0), 1);
  const auto f = fixed_chooser({1, 0, 1});
  EXPECT_EQ(f(0, 0.5), 1);
  EXPECT_EQ(f(0, 0.5), 0);
  EXPECT_EQ(f(0, 0.5), 1);
  EXPECT_EQ(f(0, 0.5), 0);
}

TEST(Ltsvs, BranchEnumerationCoversAllOutcomes) {
  const auto stream = lli("INIT 0 +\nINIT 1 +\nMBM +Z0,Z1\nMEAS 0 X\nMEAS 1 Z\n");
  double total = 0;
  std::set<std::vector<int>> seen;
  for_each_branch(stream, {}, [&](const Branch &b) {
    total += b.probability;
    seen.insert(b.bits);
  });
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_EQ(seen.size(), 8u);
}

TEST(Verify, DetectsMissingCorrections) {
  const Circuit c = parse_program(
      "OPENQASM 2.0;\nqreg q[3];\nh q[0];\nt q[0];\ncx q[0],q[1];\nh q[2];\ncx q[2],q[1];\n");
  VerifyOptions opts;
  const VerifyReport ok = verify_circuit(c, opts);
  EXPECT_TRUE(ok.pass) << to_string(ok);
  EXPECT_TRUE(ok.exhaustive);
  EXPECT_LT(ok.trace_distance, 1e-6);

  auto stream = compile_circuit(c, opts.compiler);
  std::vector<Instruction> stripped;
  for (const auto &i : stream) {
    if (!i.is<ConditionalCorrection>()) stripped.push_back(i);
  }
  const VerifyReport bad = verify_stream(c, stripped, 0, opts);
  EXPECT_FALSE(bad.pass);
  EXPECT_GT(bad.trace_distance, 0.1);
}

TEST(Verify, SnapshotsEveryInstruction) {
  const auto stream = lli("INIT 4 +\nMAGIC 5\nMBM +Z4,Z5\nMEAS 5 X\n");
  std::size_t i = 0;
  std::vector<std::size_t> sizes;
  const auto r = verified_run(
      [&]() -> std::optional<Instruction> {
        if (i >= stream.size()) return std::nullopt;
        return stream[i++];
      },
      1, {.when = SnapshotWhen::EveryInstruction, .amplitudes = true},
      [&](const Snapshot &s) { sizes.push_back(s.groups.size()); });
  EXPECT_EQ(r.instructions, 4u);
  EXPECT_EQ(r.outcomes.size(), 2u);
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2, 1, 1}));
  EXPECT_EQ(r.largest_group, 2u);
}

TEST(Dense, GateSemantics) {
  // crz(pi/2) on |11> gives the phase i.
  DenseState d(2);
  d.apply(0, gate_matrix(GateKind::X));
  d.apply(1, gate_matrix(GateKind::X));
  d.apply_gate(make_gate(GateKind::CRZ, {0, 1}, ExactAngle::pi_over_pow2(1)));
  EXPECT_NEAR(std::abs(d.amplitudes()[3] - Amplitude(0, 1)), 0, 1e-12);
  const double p = d.probability_zero({{0, Pauli::Z}, {1, Pauli::Z}}, 1);
  EXPECT_NEAR(p, 1.0, 1e-12);
  EXPECT_NEAR(trace_distance({1, 0}, {0, 1}), 1.0, 1e-12);
  EXPECT_NEAR(overlap({1, 0}, {Amplitude(0, 1), 0}), 1.0, 1e-12);
}

}  // namespace
}  // namespace surgec
