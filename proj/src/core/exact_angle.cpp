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

#include "surgec/exact_angle.hpp"

#include <cmath>
#include <numbers>

#include "surgec/error.hpp"

namespace surgec {

const char *to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::UnsupportedGate: return "unsupported gate";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::NoApproximationFound: return "no approximation found";
    case ErrorKind::MissingCacheEntry: return "missing cache entry";
    case ErrorKind::UnsupportedBlock: return "unsupported block";
    case ErrorKind::MidCircuitMeasurement: return "mid-circuit measurement";
    case ErrorKind::Layout: return "layout error";
    case ErrorKind::UnknownPatch: return "unknown patch";
    case ErrorKind::NoRoute: return "no route";
    case ErrorKind::Deadlock: return "deadlock";
    case ErrorKind::DeadPatch: return "dead patch";
    case ErrorKind::BudgetExceeded: return "budget exceeded";
    case ErrorKind::Threshold: return "below threshold required";
    case ErrorKind::Io: return "i/o error";
    case ErrorKind::Internal: return "internal error";
  }
  return "error";
}

ParseError::ParseError(std::size_t line, std::string token,
                       const std::string &message)
    : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + message +
                                  " (at '" + token + "')"),
      line_(line),
      token_(std::move(token)) {}

namespace {

BigInt pow2(std::uint32_t k) { return BigInt(1) << k; }

}  // namespace

ExactAngle::ExactAngle(BigInt numerator, std::uint32_t denom_power) {
  // Wrap into (-2^k, 2^k], i.e. (-pi, pi].
  const BigInt period = pow2(denom_power + 1);
  BigInt m = numerator % period;
  if (m < 0) m += period;
  if (m > pow2(denom_power)) m -= period;
  std::uint32_t k = denom_power;
  if (m == 0) {
    k = 0;
  } else {
    const unsigned tz = boost::multiprecision::lsb(m < 0 ? BigInt(-m) : m);
    const std::uint32_t shift = std::min<std::uint32_t>(tz, k);
    m >>= shift;  // exact: the low `shift` bits are zero, so this divides
    k -= shift;
  }
  numerator_ = std::move(m);
  denom_power_ = k;
}

ExactAngle ExactAngle::pi_over_pow2(std::uint32_t power, int sign) {
  return ExactAngle(BigInt(sign < 0 ? -1 : 1), power);
}

ExactAngle ExactAngle::eighths(int k) { return ExactAngle(BigInt(k), 3); }

ExactAngle ExactAngle::halved() const {
  if (is_zero()) return {};
  return ExactAngle(numerator_, denom_power_ + 1);
}

ExactAngle ExactAngle::operator-() const {
  return ExactAngle(-numerator_, denom_power_);
}

ExactAngle ExactAngle::operator+(const ExactAngle &other) const {
  const std::uint32_t k = std::max(denom_power_, other.denom_power_);
  BigInt sum = (numerator_ << (k - denom_power_)) +
               (other.numerator_ << (k - other.denom_power_));
  return ExactAngle(std::move(sum), k);
}

ExactAngle ExactAngle::operator-(const ExactAngle &other) const {
  return *this + (-other);
}

std::optional<int> ExactAngle::as_eighths() const {
  if (denom_power_ > 3) return std::nullopt;
  return static_cast<int>(numerator_) << (3 - denom_power_);
}

double ExactAngle::radians() const {
  if (is_zero()) return 0.0;
  // Keep the top bits only; the numerator may be far wider than a double.
  BigInt num = numerator_;
  int exponent = -static_cast<int>(denom_power_);
  const BigInt abs_num = num < 0 ? BigInt(-num) : num;
  const unsigned bits = boost::multiprecision::msb(abs_num) + 1;
  if (bits > 60) {
    num >>= (bits - 60);
    exponent += static_cast<int>(bits - 60);
  }
  return std::ldexp(static_cast<double>(num), exponent) * std::numbers::pi;
}

std::string ExactAngle::to_string() const {
  return numerator_.str() + "/2^" + std::to_string(denom_power_);
}

ExactAngle ExactAngle::from_string(const std::string &text) {
  const auto slash = text.find("/2^");
  try {
    if (slash == std::string::npos) return ExactAngle(BigInt(text), 0);
    BigInt num(text.substr(0, slash));
    const unsigned long power = std::stoul(text.substr(slash + 3));
    return ExactAngle(std::move(num), static_cast<std::uint32_t>(power));
  } catch (const std::exception &) {
    throw Error(ErrorKind::InvalidArgument, "malformed angle '" + text + "'");
  }
}

ExactAngle angle_halve(const ExactAngle &a) { return a.halved(); }

ExactAngle angle_add(const ExactAngle &a, const ExactAngle &b) { return a + b; }

}  // namespace surgec
