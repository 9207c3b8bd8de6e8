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

#include "surgec/qasm.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "surgec/error.hpp"

namespace surgec {

namespace {

struct GateInfo {
  const char *name;
  GateKind kind;
  int arity;
  bool angle;
};

constexpr std::array<GateInfo, 13> kGates = {{
    {"h", GateKind::H, 1, false},
    {"x", GateKind::X, 1, false},
    {"z", GateKind::Z, 1, false},
    {"s", GateKind::S, 1, false},
    {"sdg", GateKind::Sdg, 1, false},
    {"t", GateKind::T, 1, false},
    {"tdg", GateKind::Tdg, 1, false},
    {"cx", GateKind::CX, 2, false},
    {"cz", GateKind::CZ, 2, false},
    {"rx", GateKind::RX, 1, true},
    {"rz", GateKind::RZ, 1, true},
    {"crx", GateKind::CRX, 2, true},
    {"crz", GateKind::CRZ, 2, true},
}};

const GateInfo &info(GateKind kind) {
  return kGates[static_cast<std::size_t>(kind)];
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool parse_digits(std::string_view s, BigInt &out) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  out = BigInt(std::string(s));
  return true;
}

}  // namespace

const char *gate_name(GateKind kind) { return info(kind).name; }
bool has_angle(GateKind kind) { return info(kind).angle; }
int arity(GateKind kind) { return info(kind).arity; }

Gate make_gate(GateKind kind, std::vector<QubitId> qubits,
               std::optional<ExactAngle> angle) {
  if (static_cast<int>(qubits.size()) != arity(kind) ||
      angle.has_value() != has_angle(kind)) {
    throw Error(ErrorKind::Internal,
                std::string("malformed gate ") + gate_name(kind));
  }
  return Gate{kind, std::move(qubits), std::move(angle)};
}

std::optional<ExactAngle> parse_angle(std::string_view text) {
  int sign = 1;
  if (!text.empty() && text.front() == '-') {
    sign = -1;
    text.remove_prefix(1);
  }
  BigInt numerator = 1;
  const auto pi = text.find("pi");
  if (pi == std::string_view::npos) return std::nullopt;
  if (pi > 0) {
    if (pi < 2 || text[pi - 1] != '*') return std::nullopt;
    if (!parse_digits(text.substr(0, pi - 1), numerator)) return std::nullopt;
  }
  std::string_view rest = text.substr(pi + 2);
  std::uint32_t power = 0;
  if (!rest.empty()) {
    if (rest.front() != '/') return std::nullopt;
    BigInt denom;
    if (!parse_digits(rest.substr(1), denom) || denom == 0) return std::nullopt;
    const unsigned low = boost::multiprecision::lsb(denom);
    if (boost::multiprecision::msb(denom) != low) return std::nullopt;
    power = low;
  }
  return ExactAngle(sign * numerator, power);
}

std::string format_angle(const ExactAngle &angle) {
  if (angle.is_zero()) return "0*pi";
  std::string out;
  const BigInt &n = angle.numerator();
  if (n == 1) {
    out = "pi";
  } else if (n == -1) {
    out = "-pi";
  } else {
    out = n.str() + "*pi";
  }
  if (angle.denom_power() > 0) {
    out += '/';
    out += (BigInt(1) << angle.denom_power()).str();
  }
  return out;
}

QasmReader::QasmReader(std::istream &in, QasmOptions options)
    : in_(in), options_(options) {}

void QasmReader::fail(std::string_view token, const std::string &msg) const {
  throw ParseError(statement_line_, std::string(token), msg);
}

bool QasmReader::next_statement(std::string &stmt) {
  stmt.clear();
  bool started = false;
  while (true) {
    if (!have_line_) {
      if (!std::getline(in_, line_)) break;
      ++line_number_;
      if (const auto c = line_.find("//"); c != std::string::npos) {
        line_.erase(c);
      }
      pos_ = 0;
      have_line_ = true;
    }
    while (pos_ < line_.size()) {
      const char c = line_[pos_++];
      if (c == ';') return true;
      if (!started && std::isspace(static_cast<unsigned char>(c))) continue;
      if (!started) {
        started = true;
        statement_line_ = line_number_;
      }
      stmt += c;
    }
    have_line_ = false;
    if (started) stmt += ' ';
  }
  if (in_.bad()) throw Error(ErrorKind::Io, "read error on OpenQASM input");
  if (!trim(stmt).empty()) fail(trim(stmt), "missing ';' at end of input");
  return false;
}

void QasmReader::header() {
  if (header_done_) return;
  header_done_ = true;
  std::string stmt;
  if (!next_statement(stmt)) {
    statement_line_ = line_number_ == 0 ? 1 : line_number_;
    fail("<end of input>", "program must begin with 'OPENQASM 2.0;'");
  }
  const auto s = trim(stmt);
  if (s.substr(0, 8) != "OPENQASM") {
    fail(s, "program must begin with 'OPENQASM 2.0;'");
  }
  if (trim(s.substr(8)) != "2.0") {
    fail(trim(s.substr(8)), "only OPENQASM 2.0 is supported");
  }
}

std::uint64_t QasmReader::num_qubits() {
  header();
  std::string stmt;
  while (reg_name_.empty()) {
    if (!next_statement(stmt)) {
      statement_line_ = line_number_;
      fail("<end of input>", "no quantum register declared");
    }
    if (auto g = statement(stmt)) {
      fail(gate_name(g->kind), "gate used before the qreg declaration");
    }
  }
  return num_qubits_;
}

std::optional<Gate> QasmReader::next() {
  num_qubits();
  std::string stmt;
  while (next_statement(stmt)) {
    if (auto g = statement(stmt)) return g;
  }
  return std::nullopt;
}

std::optional<Gate> QasmReader::statement(const std::string &raw) {
  const std::string_view s = trim(raw);
  std::size_t i = 0;
  while (i < s.size() && is_ident_char(s[i])) ++i;
  const std::string_view word = s.substr(0, i);
  const std::string_view rest = trim(s.substr(i));

  if (word == "include" || word == "creg" || word == "barrier") return {};
  if (word == "OPENQASM") fail(word, "duplicate OPENQASM header");
  if (word == "measure") fail(word, "measurement not supported");
  if (word == "if") fail(word, "classical control not supported");
  if (word == "reset") fail(word, "reset not supported");
  if (word == "gate" || word == "opaque") {
    fail(word, "gate definitions not supported");
  }
  if (word == "qreg") {
    if (!reg_name_.empty()) {
      fail(word, "only one quantum register is supported");
    }
    const auto lb = rest.find('[');
    const auto rb = rest.find(']');
    if (lb == std::string_view::npos || rb == std::string_view::npos ||
        rb < lb || !trim(rest.substr(rb + 1)).empty()) {
      fail(rest, "malformed qreg declaration");
    }
    const auto name = trim(rest.substr(0, lb));
    const auto size = trim(rest.substr(lb + 1, rb - lb - 1));
    std::uint64_t n = 0;
    auto [p, ec] = std::from_chars(size.data(), size.data() + size.size(), n);
    if (name.empty() || ec != std::errc() || p != size.data() + size.size() ||
        n == 0) {
      fail(rest, "malformed qreg declaration");
    }
    reg_name_ = std::string(name);
    num_qubits_ = n;
    return {};
  }

  const GateInfo *gi = nullptr;
  for (const auto &g : kGates) {
    if (word == g.name) gi = &g;
  }
  if (gi == nullptr) {
    fail(word.empty() ? s : word, "unsupported gate or instruction");
  }
  if (reg_name_.empty()) {
    fail(word, "gate used before the qreg declaration");
  }

  std::string_view operands = rest;
  std::optional<ExactAngle> angle;
  if (gi->angle) {
    if (operands.empty() || operands.front() != '(') {
      fail(word, "rotation gate needs an angle argument");
    }
    const auto close = operands.find(')');
    if (close == std::string_view::npos) fail(operands, "missing ')'");
    const auto text = operands.substr(1, close - 1);
    angle = parse_angle(text);
    if (!angle) {
      fail(text, "malformed angle expression (expected pi/m or n*pi/m, "
                 "m a power of two, no whitespace)");
    }
    operands = trim(operands.substr(close + 1));
  } else if (!operands.empty() && operands.front() == '(') {
    fail(word, "gate takes no angle argument");
  }

  std::vector<QubitId> qubits;
  while (!operands.empty()) {
    const auto comma = operands.find(',');
    const auto item = trim(operands.substr(0, comma));
    const auto lb = item.find('[');
    if (lb == std::string_view::npos || item.back() != ']') {
      fail(item, "expected qubit operand like q[0]");
    }
    if (trim(item.substr(0, lb)) != reg_name_) {
      fail(item, "unknown register");
    }
    const auto idx = trim(item.substr(lb + 1, item.size() - lb - 2));
    std::uint64_t q = 0;
    auto [p, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), q);
    if (ec != std::errc() || p != idx.data() + idx.size()) {
      fail(item, "malformed qubit index");
    }
    if (q >= num_qubits_) fail(item, "qubit index out of range");
    qubits.push_back(q);
    if (comma == std::string_view::npos) break;
    operands = trim(operands.substr(comma + 1));
  }
  if (static_cast<int>(qubits.size()) != gi->arity) {
    fail(s, std::string("gate ") + gi->name + " expects " +
                std::to_string(gi->arity) + " operand(s)");
  }
  if (gi->arity == 2 && qubits[0] == qubits[1]) {
    fail(s, "two-qubit gate on a single qubit");
  }
  if (gi->kind == GateKind::CX && options_.target_first_cx) {
    std::swap(qubits[0], qubits[1]);
  }
  return Gate{gi->kind, std::move(qubits), std::move(angle)};
}

Circuit parse_program(std::string_view text, QasmOptions options) {
  std::istringstream in{std::string(text)};
  QasmReader reader(in, options);
  Circuit c;
  c.num_qubits = reader.num_qubits();
  while (auto g = reader.next()) c.gates.push_back(std::move(*g));
  return c;
}

std::string print_program(const Circuit &circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q["
      << circuit.num_qubits << "];\n";
  for (const Gate &g : circuit.gates) {
    out << gate_name(g.kind);
    if (g.angle) out << '(' << format_angle(*g.angle) << ')';
    out << ' ';
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      if (i) out << ',';
      out << "q[" << g.qubits[i] << ']';
    }
    out << ";\n";
  }
  return out.str();
}

void write_qft(std::ostream &out, std::uint64_t n) {
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << n << "];\n";
  for (std::uint64_t i = 0; i < n; ++i) {
    out << "h q[" << i << "];\n";
    BigInt denom = 1;
    for (std::uint64_t j = i + 1; j < n; ++j) {
      denom <<= 1;
      out << "crz(pi/" << denom << ") q[" << j << "],q[" << i << "];\n";
    }
  }
}

std::string generate_qft(std::uint64_t n) {
  std::ostringstream out;
  write_qft(out, n);
  return out.str();
}

}  // namespace surgec
