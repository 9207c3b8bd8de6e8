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
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace surgec {

using BigInt = boost::multiprecision::cpp_int;

/// An angle numerator * pi / 2^denom_power, held exactly.
///
/// Values are always canonical: the angle lies in (-pi, pi], the numerator
/// is odd unless the angle is zero, and zero is stored as (0, 0). Two angles
/// are equal iff their representations are equal.
class ExactAngle {
 public:
  ExactAngle() = default;
  ExactAngle(BigInt numerator, std::uint32_t denom_power);

  /// sign * pi / 2^power.
  static ExactAngle pi_over_pow2(std::uint32_t power, int sign = 1);
  /// k * pi / 8.
  static ExactAngle eighths(int k);

  const BigInt &numerator() const { return numerator_; }
  std::uint32_t denom_power() const { return denom_power_; }
  bool is_zero() const { return numerator_ == 0; }

  ExactAngle halved() const;
  ExactAngle operator-() const;
  ExactAngle operator+(const ExactAngle &other) const;
  ExactAngle operator-(const ExactAngle &other) const;

  /// If the angle is k * pi/8 exactly, returns k in (-8, 8].
  std::optional<int> as_eighths() const;
  /// Radians. Lossy; only for numerics downstream of the exact pipeline.
  double radians() const;
  /// `<numerator>/2^<power>`, the key syntax of approximation caches.
  std::string to_string() const;
  /// Inverse of to_string.
  static ExactAngle from_string(const std::string &text);

  bool operator==(const ExactAngle &other) const = default;

 private:
  BigInt numerator_ = 0;
  std::uint32_t denom_power_ = 0;
};

ExactAngle angle_halve(const ExactAngle &a);
ExactAngle angle_add(const ExactAngle &a, const ExactAngle &b);

}  // namespace surgec
