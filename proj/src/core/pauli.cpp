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

#include "surgec/pauli.hpp"

#include <algorithm>
#include <cctype>

#include "surgec/error.hpp"

namespace surgec {

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw Error(ErrorKind::InvalidArgument,
                  std::string("not a Pauli operator: '") + c + "'");
  }
}

std::pair<Pauli, int> multiply(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 0};
  if (b == Pauli::I) return {a, 0};
  if (a == b) return {Pauli::I, 0};
  // Cyclic order X -> Y -> Z -> X gives +i, the reverse order -i.
  const int ia = static_cast<int>(a) - 1;
  const int ib = static_cast<int>(b) - 1;
  const auto c = static_cast<Pauli>(3 - ia - ib + 1);
  const bool cyclic = (ia + 1) % 3 == ib;
  return {c, cyclic ? 1 : 3};
}

PauliProduct::PauliProduct(std::vector<Term> terms, int sign)
    : terms_(std::move(terms)), sign_(sign < 0 ? -1 : 1) {
  std::erase_if(terms_, [](const Term &t) { return t.op == Pauli::I; });
  std::sort(terms_.begin(), terms_.end(),
            [](const Term &a, const Term &b) { return a.qubit < b.qubit; });
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    if (terms_[i].qubit == terms_[i - 1].qubit) {
      throw Error(ErrorKind::InvalidArgument,
                  "qubit " + std::to_string(terms_[i].qubit) +
                      " appears twice in a Pauli product");
    }
  }
}

PauliProduct PauliProduct::single(QubitId qubit, Pauli op, int sign) {
  return PauliProduct({{qubit, op}}, sign);
}

PauliProduct PauliProduct::parse(const std::string &text) {
  std::size_t i = 0;
  int sign = 1;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    sign = text[i] == '-' ? -1 : 1;
    ++i;
  }
  std::vector<Term> terms;
  while (i < text.size()) {
    const Pauli op = pauli_from_char(text[i++]);
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      ++i;
    if (start == i) {
      throw Error(ErrorKind::InvalidArgument,
                  "missing qubit index in Pauli product '" + text + "'");
    }
    terms.push_back({std::stoull(text.substr(start, i - start)), op});
  }
  return PauliProduct(std::move(terms), sign);
}

Pauli PauliProduct::at(QubitId qubit) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), qubit,
      [](const Term &t, QubitId q) { return t.qubit < q; });
  if (it != terms_.end() && it->qubit == qubit) return it->op;
  return Pauli::I;
}

PauliProduct PauliProduct::negated() const { return with_sign(-sign_); }

PauliProduct PauliProduct::with_sign(int sign) const {
  PauliProduct copy = *this;
  copy.sign_ = sign < 0 ? -1 : 1;
  return copy;
}

bool PauliProduct::commutes_with(const PauliProduct &other) const {
  int anticommuting = 0;
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() && b != other.terms_.end()) {
    if (a->qubit < b->qubit) {
      ++a;
    } else if (b->qubit < a->qubit) {
      ++b;
    } else {
      anticommuting += a->op != b->op;
      ++a;
      ++b;
    }
  }
  return anticommuting % 2 == 0;
}

std::string PauliProduct::to_string() const {
  std::string out = sign_ < 0 ? "-" : "+";
  for (const Term &t : terms_) {
    out += to_char(t.op);
    out += std::to_string(t.qubit);
  }
  return out;
}

PauliProduct pauli_multiply(const PauliProduct &p, const PauliProduct &q) {
  std::vector<PauliProduct::Term> terms;
  terms.reserve(p.weight() + q.weight());
  int phase = 0;
  auto a = p.terms().begin();
  auto b = q.terms().begin();
  while (a != p.terms().end() || b != q.terms().end()) {
    if (b == q.terms().end() || (a != p.terms().end() && a->qubit < b->qubit)) {
      terms.push_back(*a++);
    } else if (a == p.terms().end() || b->qubit < a->qubit) {
      terms.push_back(*b++);
    } else {
      auto [op, ph] = multiply(a->op, b->op);
      phase += ph;
      if (op != Pauli::I) terms.push_back({a->qubit, op});
      ++a;
      ++b;
    }
  }
  phase %= 4;
  int sign = p.sign() * q.sign();
  if (phase % 2 == 0) {
    if (phase == 2) sign = -sign;
  } else {
    // -i * i^phase: phase 1 -> +1, phase 3 -> -1.
    if (phase == 3) sign = -sign;
  }
  return PauliProduct(std::move(terms), sign);
}

}  // namespace surgec
