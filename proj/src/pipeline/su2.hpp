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

#include <array>
#include <cmath>
#include <numbers>
#include <string_view>

#include "surgec/error.hpp"

namespace surgec::su2 {

// A unit quaternion (a, b, c, d) stands for a*I - i*(b X + c Y + d Z); the
// Hamilton product matches the matrix product. q and -q are the same gate.
using Quat = std::array<double, 4>;

inline Quat mul(const Quat &p, const Quat &q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
          p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
          p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

inline Quat conj(const Quat &q) { return {q[0], -q[1], -q[2], -q[3]}; }

inline Quat z_rotation(double angle) {
  return {std::cos(angle), 0.0, 0.0, std::sin(angle)};
}

inline Quat letter(char c) {
  constexpr double r = std::numbers::sqrt2 / 2;
  switch (c) {
    case 'H': return {0.0, r, 0.0, r};
    case 'S': return {r, 0.0, 0.0, r};
    case 'T':
      return {std::cos(std::numbers::pi / 8), 0.0, 0.0,
              std::sin(std::numbers::pi / 8)};
    case 'X': return {0.0, 1.0, 0.0, 0.0};
    case 'Z': return {0.0, 0.0, 0.0, 1.0};
    case 'I': return {1.0, 0.0, 0.0, 0.0};
    default:
      throw Error(ErrorKind::InvalidArgument,
                  std::string("not a Clifford+T letter: '") + c + "'");
  }
}

inline Quat word(std::string_view letters) {
  Quat q{1.0, 0.0, 0.0, 0.0};
  for (char c : letters) q = mul(q, letter(c));
  return q;
}

/// Operator-norm distance up to global phase.
inline double distance(const Quat &p, const Quat &q) {
  double minus = 0.0;
  double plus = 0.0;
  for (int i = 0; i < 4; ++i) {
    minus += (p[i] - q[i]) * (p[i] - q[i]);
    plus += (p[i] + q[i]) * (p[i] + q[i]);
  }
  return std::sqrt(std::min(minus, plus));
}

}  // namespace surgec::su2
