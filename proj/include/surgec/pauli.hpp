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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "surgec/exact_angle.hpp"

namespace surgec {

using QubitId = std::uint64_t;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);  // throws on anything but I/X/Y/Z

/// Single-qubit product a*b = i^phase * result, phase in {0,1,2,3}.
std::pair<Pauli, int> multiply(Pauli a, Pauli b);

/// A signed tensor product of Paulis. Identities are never stored; terms are
/// kept sorted by qubit.
class PauliProduct {
 public:
  struct Term {
    QubitId qubit;
    Pauli op;
    bool operator==(const Term &) const = default;
  };

  PauliProduct() = default;
  PauliProduct(std::vector<Term> terms, int sign = 1);
  static PauliProduct single(QubitId qubit, Pauli op, int sign = 1);
  /// Parses e.g. "-X0Z3" or "+Y1".
  static PauliProduct parse(const std::string &text);

  std::span<const Term> terms() const { return terms_; }
  int sign() const { return sign_; }
  bool is_identity() const { return terms_.empty(); }
  std::size_t weight() const { return terms_.size(); }
  Pauli at(QubitId qubit) const;

  PauliProduct negated() const;
  PauliProduct with_sign(int sign) const;
  bool commutes_with(const PauliProduct &other) const;

  std::string to_string() const;

  bool operator==(const PauliProduct &) const = default;

 private:
  std::vector<Term> terms_;
  int sign_ = 1;
};

/// Group product folded back to a Hermitian, ±1-signed operator.
///
/// Commuting factors give the plain product p*q. Anticommuting factors give
/// -i*p*q, the Hermitian axis that appears when a pi/4 rotation about p is
/// commuted through a rotation about q.
PauliProduct pauli_multiply(const PauliProduct &p, const PauliProduct &q);

/// exp(-i * angle * axis).
struct PauliRotation {
  PauliProduct axis;
  ExactAngle angle;

  bool operator==(const PauliRotation &) const = default;
};

}  // namespace surgec
