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
#include <sstream>

#include "oracle.hpp"
#include "properties.hpp"
#include "surgec/approximation.hpp"
#include "surgec/blocks.hpp"
#include "surgec/compiler.hpp"
#include "surgec/error.hpp"
#include "surgec/litinski.hpp"
#include "surgec/lowering.hpp"
#include "surgec/verify.hpp"

namespace surgec {
namespace {

using oracle::Mat;

// Matrix of a block list in matrix-product order.
Mat blocks_matrix(const std::vector<RotationBlock> &blocks) {
  Mat m = Mat::Identity(2, 2);
  for (const auto &b : blocks) {
    if (const auto *r = std::get_if<PauliRotation>(&b)) {
      m = m * oracle::rotation(*r, 1);
    } else {
      m = m * oracle::letter(std::get<ResidualClifford>(b).gate);
    }
  }
  return m;
}

TEST(Compress, WorkedExample) {
  const auto blocks = compress_to_pauli_rotations("HSHTSHX");
  const std::vector<RotationBlock> want{
      PauliRotation{PauliProduct::single(0, Pauli::X), ExactAngle::eighths(2)},
      PauliRotation{PauliProduct::single(0, Pauli::Z), ExactAngle::eighths(3)},
      ResidualClifford{'H', 0}, ResidualClifford{'X', 0}};
  EXPECT_EQ(blocks, want);
  std::string text;
  for (const auto &b : blocks) text += to_string(b) + " ";
  EXPECT_EQ(text, "+X0(1/2^2 pi) +Z0(3/2^3 pi) H0 X0 ");
  EXPECT_LT(oracle::phase_distance(blocks_matrix(blocks), oracle::letters("HSHTSHX")), 1e-12);
}

TEST(CompressProperty, PreservesUnitary) {
  std::mt19937_64 rng(3);
  const char alphabet[] = "HSTXZ";
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    const int len = static_cast<int>(rng() % 40);
    for (int j = 0; j < len; ++j) s += alphabet[rng() % 5];
    const auto blocks = compress_to_pauli_rotations(s, 0);
    ASSERT_LT(oracle::phase_distance(blocks_matrix(blocks), oracle::letters(s)), 1e-9) << s;
    // Every S and T is absorbed into a rotation.
    for (const auto &b : blocks) {
      if (const auto *r = std::get_if<ResidualClifford>(&b)) {
        ASSERT_TRUE(r->gate != 'S' && r->gate != 'T') << s;
      }
    }
  }
}

TEST(Compress, RejectsForeignLetters) {
  EXPECT_THROW(compress_to_pauli_rotations("HQ"), Error);
}

TEST(Blocks, Classify) {
  EXPECT_EQ(classify(ExactAngle()), AngleClass::Identity);
  EXPECT_EQ(classify(ExactAngle(1, 0)), AngleClass::Identity);
  EXPECT_EQ(classify(ExactAngle::eighths(-4)), AngleClass::Pauli);
  EXPECT_EQ(classify(ExactAngle::eighths(6)), AngleClass::Clifford);
  EXPECT_EQ(classify(ExactAngle::eighths(-3)), AngleClass::NonClifford);
  EXPECT_EQ(classify(ExactAngle(5, 40)), AngleClass::Arbitrary);
}

TEST(Blocks, GateRotationsMatchGates) {
  for (GateKind k : {GateKind::H, GateKind::X, GateKind::Z, GateKind::S, GateKind::Sdg,
                     GateKind::T, GateKind::Tdg, GateKind::CX}) {
    const Gate g = arity(k) == 2 ? make_gate(k, {1, 0}) : make_gate(k, {1});
    Mat m = Mat::Identity(4, 4);
    for (const auto &r : gate_rotations(g)) m = oracle::rotation(r, 2) * m;
    EXPECT_LT(oracle::phase_distance(m, oracle::gate(g, 2)), 1e-12) << gate_name(k);
  }
  EXPECT_THROW(gate_rotations(make_gate(GateKind::RZ, {0}, ExactAngle(1, 5))), Error);
}

TEST(LitinskiProperty, PreservesOutcomeDistribution) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const Circuit c = props::random_circuit(rng, 1 + trial % 3, 4 + static_cast<int>(rng() % 20));
    ASSERT_LE(props::litinski_tv(c), 1e-9) << print_program(c);
  }
}

TEST(Litinski, RejectsMidCircuitMeasurement) {
  const std::vector<RotationBlock> blocks{PauliMeasurement{PauliProduct::parse("+Z0")}};
  try {
    litinski_transform(blocks, {});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::MidCircuitMeasurement);
  }
}

TEST(Litinski, CommuteCliffordPast) {
  // S moves X to Y.
  const PauliRotation s{PauliProduct::parse("+Z0"), ExactAngle::eighths(2)};
  const PauliRotation t{PauliProduct::parse("+X0"), ExactAngle::eighths(1)};
  const auto moved = commute_clifford_past(s, t);
  // S R = R' S: check with matrices.
  EXPECT_LT(oracle::phase_distance(oracle::rotation(s, 1) * oracle::rotation(t, 1),
                                   oracle::rotation(moved, 1) * oracle::rotation(s, 1)),
            1e-12);
}

TEST(LoweringProperty, TemplatesHoldInEveryBranch) {
  std::mt19937_64 rng(99);
  constexpr std::size_t n = 3;
  std::size_t runs = 0, branches = 0;
  for (const auto &t : props::lowering_templates(n)) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto r = props::check_template(t, n, rng);
      EXPECT_GE(r.min_fidelity, 1 - 1e-9) << t.name;
      EXPECT_NEAR(r.total_probability, 1.0, 1e-9) << t.name;
      ++runs;
      branches += r.branches;
    }
  }
  // Most templates measure, so they fork.
  EXPECT_GT(branches, 2 * runs);
}

TEST(Lowering, CnotShape) {
  std::vector<Instruction> out;
  LliEmitter e([&](const Instruction &i) { out.push_back(i); }, 5);
  lower_cnot(e, 0, 1);
  std::string text;
  for (const auto &i : out) text += serialize_lli(i) + "\n";
  EXPECT_EQ(text,
            "INIT 5 +\nMBM +Z0,Z5\nMBM +X5,X1\nMEAS 5 Z\n"
            "IF 2 1 PAULI 0 Z\nIF 1 1 PAULI 1 X\nIF 3 1 PAULI 1 X\n");
  EXPECT_EQ(e.next_ancilla(), 6u);
}

TEST(Lowering, RejectsFineAngles) {
  std::vector<Instruction> out;
  LliEmitter e([&](const Instruction &i) { out.push_back(i); }, 1);
  EXPECT_THROW(lower_rotation(e, {PauliProduct::parse("+Z0"), ExactAngle(1, 4)}, {}), Error);
  EXPECT_THROW(lower_gate(e, make_gate(GateKind::RZ, {0}, ExactAngle(1, 2)), {}), Error);
}

TEST(Approximation, ExactAnglesNeedNoSearch) {
  EXPECT_EQ(exact_letters(ExactAngle::eighths(1)), "T");
  EXPECT_EQ(exact_letters(ExactAngle::eighths(-1)), "ZST");
  EXPECT_FALSE(exact_letters(ExactAngle(1, 4)).has_value());
  for (int k = -7; k <= 8; ++k) {
    const auto s = exact_letters(ExactAngle::eighths(k));
    EXPECT_LT(sequence_distance(*s, ExactAngle::eighths(k).radians()), 1e-12);
  }
}

TEST(Approximation, BuiltinSearchMeetsEpsilon) {
  Approximator a({.epsilon = 1e-2});
  for (std::uint32_t k = 4; k <= 20; ++k) {
    for (int sign : {1, -1}) {
      const ExactAngle angle = ExactAngle::pi_over_pow2(k, sign);
      const std::string s = a.approximate(angle);
      EXPECT_LE(sequence_distance(s, angle.radians()), 1e-2) << angle.to_string();
      EXPECT_EQ(s.find_first_not_of("HSTXZ"), std::string::npos);
    }
  }
  const auto before = a.searches();
  a.approximate(ExactAngle::pi_over_pow2(7));
  EXPECT_EQ(a.searches(), before);  // memoised
}

TEST(Approximation, SimplifyLetters) {
  EXPECT_EQ(simplify_letters("HH"), "");
  EXPECT_EQ(simplify_letters("TT"), "S");
  EXPECT_EQ(simplify_letters("SS"), "Z");
  const std::string s = "HTTSSZXXHT";
  EXPECT_LT(oracle::phase_distance(oracle::letters(simplify_letters(s)), oracle::letters(s)),
            1e-12);
}

TEST(Approximation, CacheFilesLoadAndVerify) {
  auto cache = std::make_shared<ApproximationCache>();
  cache->load_file(SURGEC_TEST_DATA "/rz_pow2_eps1e-10.cache");
  EXPECT_GE(cache->size(), 20u);
  const auto e = cache->find(ExactAngle::pi_over_pow2(9), 1e-10);
  ASSERT_TRUE(e.has_value());
  EXPECT_LE(sequence_distance(e->letters, ExactAngle::pi_over_pow2(9).radians()), 1e-10);
  EXPECT_FALSE(cache->find(ExactAngle::pi_over_pow2(9), 1e-12).has_value());

  Approximator a({.epsilon = 1e-10, .cache = cache, .cache_only = true});
  EXPECT_EQ(a.approximate(ExactAngle::pi_over_pow2(9)), e->letters);
  try {
    a.approximate(ExactAngle(3, 41));
    FAIL();
  } catch (const Error &err) {
    EXPECT_EQ(err.kind(), ErrorKind::MissingCacheEntry);
  }

  std::istringstream bad("1/2^9 1e-10 HT\n");
  EXPECT_THROW(ApproximationCache().load(bad), ParseError);
}

TEST(Compiler, CountsAndVerifies) {
  const Circuit qft = parse_program(generate_qft(3));
  VerifyOptions opts;
  opts.compiler.approximation.epsilon = 1e-2;
  const VerifyReport r = verify_circuit(qft, opts);
  EXPECT_TRUE(r.pass) << to_string(r);
  EXPECT_GT(r.approximated_rotations, 0u);

  Circuit ct{2, {make_gate(GateKind::H, {0}), make_gate(GateKind::T, {0}),
                 make_gate(GateKind::CX, {0, 1}), make_gate(GateKind::Tdg, {1})}};
  opts.compiler.mode = LoweringMode::Compressed;
  EXPECT_TRUE(verify_circuit(ct, opts).pass);
  opts.compiler.mode = LoweringMode::Direct;
  opts.compiler.litinski = true;
  EXPECT_NO_THROW(compile_circuit(ct, opts.compiler));
}

TEST(Compiler, SequenceCounts) {
  // T costs MAGIC, MBM, MEAS and three conditionals; H costs H and ROT.
  EXPECT_EQ(count_sequence_lli("H", LoweringMode::Direct), 2u);
  EXPECT_EQ(count_sequence_lli("S", LoweringMode::Direct), 1u);
  EXPECT_GT(count_sequence_lli("T", LoweringMode::Direct, true),
            count_sequence_lli("T", LoweringMode::Direct, false));
  EXPECT_EQ(count_sequence_lli("", LoweringMode::Compressed), 0u);
}

}  // namespace
}  // namespace surgec
