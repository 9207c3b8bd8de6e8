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

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "surgec/error.hpp"
#include "surgec/exact_angle.hpp"
#include "surgec/lli.hpp"
#include "surgec/pauli.hpp"

namespace surgec {
namespace {

using boost::multiprecision::cpp_rational;

// Rational multiple of pi wrapped into (-1, 1].
cpp_rational wrap(cpp_rational r) {
  const cpp_rational shifted = (r + 1) / 2;
  const BigInt turns = numerator(shifted) / denominator(shifted);
  cpp_rational w = r - 2 * cpp_rational(turns);
  if (w <= -1) w += 2;
  if (w > 1) w -= 2;
  return w;
}

cpp_rational as_rational(const ExactAngle &a) {
  return cpp_rational(a.numerator(), BigInt(1) << a.denom_power());
}

TEST(ExactAngle, HalvingKeepsNumerator) {
  EXPECT_EQ(ExactAngle::pi_over_pow2(127).halved(), ExactAngle(1, 128));
  EXPECT_EQ(ExactAngle(3, 2).halved(), ExactAngle(3, 3));
  EXPECT_EQ(angle_halve(ExactAngle(3, 2)).to_string(), "3/2^3");
}

TEST(ExactAngle, AdditionWraps) {
  EXPECT_EQ(ExactAngle::eighths(1) + ExactAngle::eighths(2), ExactAngle::eighths(3));
  EXPECT_EQ(ExactAngle(1, 0) + ExactAngle(1, 1), ExactAngle(-1, 1));
  const ExactAngle x(12345, 40);
  EXPECT_TRUE((x + (-x)).is_zero());
  EXPECT_EQ(angle_add(x, x), ExactAngle(12345, 39));
}

TEST(ExactAngle, Normalisation) {
  EXPECT_EQ(ExactAngle(-1, 0), ExactAngle(1, 0));  // -pi is pi
  EXPECT_EQ(ExactAngle(4, 3), ExactAngle(1, 1));
  EXPECT_EQ(ExactAngle(0, 9).denom_power(), 0u);
  EXPECT_EQ(ExactAngle(9, 3), ExactAngle(-7, 3));
  EXPECT_EQ(ExactAngle::eighths(2).as_eighths(), 2);
  EXPECT_FALSE(ExactAngle(1, 4).as_eighths().has_value());
}

TEST(ExactAngle, StringRoundTrip) {
  const ExactAngle a(BigInt("-123456789012345678901234567890123"), 200);
  EXPECT_EQ(ExactAngle::from_string(a.to_string()), a);
  EXPECT_EQ(ExactAngle::from_string("1/2^3"), ExactAngle::eighths(1));
  EXPECT_THROW(ExactAngle::from_string("pi/4"), Error);
}

TEST(ExactAngle, RadiansOfHugeDenominator) {
  EXPECT_NEAR(ExactAngle(3, 2).radians(), 3 * std::numbers::pi / 4, 1e-15);
  const double tiny = ExactAngle(1, 300).radians();
  EXPECT_GT(tiny, 0.0);
  EXPECT_NEAR(std::log2(tiny / std::numbers::pi), -300.0, 1e-9);
}

TEST(ExactAngleProperty, MatchesRationalArithmetic) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint32_t> power(0, 256);
  std::uniform_int_distribution<std::int64_t> num(-(std::int64_t{1} << 62),
                                                  std::int64_t{1} << 62);
  for (int i = 0; i < 2000; ++i) {
    const BigInt na = BigInt(num(rng)) << (i % 70);
    const BigInt nb = num(rng);
    const std::uint32_t ka = power(rng), kb = power(rng);
    const ExactAngle a(na, ka), b(nb, kb);
    const cpp_rational ra = cpp_rational(na, BigInt(1) << ka);
    const cpp_rational rb = cpp_rational(nb, BigInt(1) << kb);
    ASSERT_EQ(as_rational(a), wrap(ra));
    ASSERT_EQ(as_rational(a + b), wrap(ra + rb));
    ASSERT_EQ(as_rational(a - b), wrap(ra - rb));
    ASSERT_EQ(as_rational(a.halved()), wrap(as_rational(a) / 2));
    // Reduced form: the numerator is odd unless the angle is 0 or pi.
    if (a.denom_power() > 0) ASSERT_TRUE(bit_test(a.numerator(), 0));
  }
}

TEST(Pauli, SingleQubitTable) {
  EXPECT_EQ(multiply(Pauli::X, Pauli::Y), std::make_pair(Pauli::Z, 1));
  EXPECT_EQ(multiply(Pauli::Y, Pauli::X), std::make_pair(Pauli::Z, 3));
  EXPECT_EQ(multiply(Pauli::Z, Pauli::Z), std::make_pair(Pauli::I, 0));
  for (Pauli a : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
    for (Pauli b : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
      const auto [c, k] = multiply(a, b);
      const oracle::C phase = std::pow(oracle::kI, k);
      EXPECT_LT((oracle::pauli(a) * oracle::pauli(b) - phase * oracle::pauli(c)).norm(),
                1e-12);
    }
  }
}

TEST(Pauli, ParseAndPrint) {
  const auto p = PauliProduct::parse("-Z3X0I1");
  EXPECT_EQ(p.to_string(), "-X0Z3");
  EXPECT_EQ(p.weight(), 2u);
  EXPECT_EQ(p.at(3), Pauli::Z);
  EXPECT_EQ(p.at(2), Pauli::I);
  EXPECT_THROW(PauliProduct::parse("X"), Error);
  EXPECT_THROW(PauliProduct::parse("Q1"), Error);
}

TEST(Pauli, ProductOfTwoQubitOperators) {
  // X1Z2 and Z1X2 commute; the product is +Y1Y2.
  const auto r = pauli_multiply(PauliProduct::parse("+X1Z2"), PauliProduct::parse("+Z1X2"));
  EXPECT_EQ(r, PauliProduct::parse("+Y1Y2"));
  // Anticommuting factors give the Hermitian -i P Q; XZ = -iY.
  EXPECT_EQ(pauli_multiply(PauliProduct::parse("+X0"), PauliProduct::parse("+Z0")),
            PauliProduct::parse("-Y0"));
}

PauliProduct random_product(std::mt19937_64 &rng, std::size_t n) {
  std::vector<PauliProduct::Term> terms;
  for (std::size_t q = 0; q < n; ++q) {
    terms.push_back({q, static_cast<Pauli>(rng() % 4)});
  }
  return PauliProduct(std::move(terms), rng() % 2 ? 1 : -1);
}

TEST(PauliProperty, MultiplyMatchesMatrices) {
  std::mt19937_64 rng(11);
  constexpr std::size_t n = 4;
  for (int i = 0; i < 500; ++i) {
    const auto p = random_product(rng, n);
    const auto q = random_product(rng, n);
    const oracle::Mat pm = oracle::pauli_product(p, n);
    const oracle::Mat qm = oracle::pauli_product(q, n);
    const bool commute = (pm * qm - qm * pm).norm() < 1e-9;
    ASSERT_EQ(p.commutes_with(q), commute);
    const oracle::Mat want = commute ? oracle::Mat(pm * qm) : oracle::Mat(-oracle::kI * pm * qm);
    ASSERT_LT((oracle::pauli_product(pauli_multiply(p, q), n) - want).norm(), 1e-9)
        << p.to_string() << " * " << q.to_string();
  }
}

TEST(PauliProperty, MultiplicationAssociativeUpToSign) {
  // The -i convention breaks associativity of the phase but never of the
  // operator part.
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_product(rng, 5), b = random_product(rng, 5),
               c = random_product(rng, 5);
    const auto l = pauli_multiply(pauli_multiply(a, b), c);
    const auto r = pauli_multiply(a, pauli_multiply(b, c));
    ASSERT_EQ(l.with_sign(1), r.with_sign(1));
  }
}

TEST(Lli, RoundTrip) {
  const char *lines[] = {"INIT 5 +",  "INIT 0 0",       "MEAS 3 X",
                         "MBM +Z0,Z3", "MBM -X1,Y2,Z7", "PAULI 1 Z",
                         "H 0",        "ROT 4",         "S 1",
                         "MAGIC 3",   "IF 12 1 PAULI 2 X", "IF 0 0 IF 1 1 S 4"};
  for (const char *line : lines) {
    const auto instr = parse_lli(line);
    ASSERT_TRUE(instr.has_value()) << line;
    EXPECT_EQ(serialize_lli(*instr), line);
  }
}

TEST(Lli, CommentsAndBlankLines) {
  EXPECT_FALSE(parse_lli("").has_value());
  EXPECT_FALSE(parse_lli("   # only a comment").has_value());
  const auto i = parse_lli("H 2  # trailing\r");
  ASSERT_TRUE(i.has_value());
  EXPECT_EQ(i->as<TransversalHadamard>().patch, 2u);
}

TEST(Lli, ParseErrorsCarryPosition) {
  try {
    parse_lli("MBM Q9", 7);
    FAIL() << "expected a parse error";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 7u);
    EXPECT_EQ(e.token(), "Q9");
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
  EXPECT_THROW(parse_lli("MBM +Z1"), ParseError);       // one operand
  EXPECT_THROW(parse_lli("MBM +Z1,X1"), ParseError);    // repeated patch
  EXPECT_THROW(parse_lli("INIT 1 1"), ParseError);
  EXPECT_THROW(parse_lli("MEAS 1 Y"), ParseError);
  EXPECT_THROW(parse_lli("H -1"), ParseError);
  EXPECT_THROW(parse_lli("H 1 2"), ParseError);
  EXPECT_THROW(parse_lli("IF 3 2 H 1"), ParseError);
  EXPECT_THROW(parse_lli("CNOT 1 2"), ParseError);
}

TEST(Lli, ReaderCountsLinesAndInstructions) {
  std::istringstream in("# header\nINIT 4 0\n\nMBM +Z0,Z4\nMEAS 4 X\nbogus\n");
  LliReader reader(in);
  int n = 0;
  try {
    while (reader.next()) ++n;
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 6u);
  }
  EXPECT_EQ(n, 3);
  EXPECT_EQ(reader.count(), 3u);
}

TEST(Lli, Helpers) {
  const auto i = *parse_lli("IF 4 1 MBM +X2,Z5");
  EXPECT_FALSE(is_measurement(i));
  EXPECT_TRUE(is_measurement(innermost(i)));
  EXPECT_EQ(patches_of(i), (std::vector<PatchId>{2, 5}));
}

}  // namespace
}  // namespace surgec
