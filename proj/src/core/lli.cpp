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

#include "surgec/lli.hpp"

#include <algorithm>
#include <charconv>
#include <istream>

#include "surgec/error.hpp"

namespace surgec {

bool ConditionalCorrection::operator==(const ConditionalCorrection &o) const {
  if (!(condition == o.condition)) return false;
  if (!body || !o.body) return body == o.body;
  return *body == *o.body;
}

Instruction make_conditional(OutcomeRef condition, Instruction body) {
  return ConditionalCorrection{
      condition, std::make_shared<const Instruction>(std::move(body))};
}

bool is_measurement(const Instruction &instr) {
  return instr.is<MeasureSingle>() || instr.is<MultiBodyMeasure>();
}

const Instruction &innermost(const Instruction &instr) {
  const Instruction *cur = &instr;
  while (cur->is<ConditionalCorrection>()) {
    cur = cur->as<ConditionalCorrection>().body.get();
  }
  return *cur;
}

std::vector<PatchId> patches_of(const Instruction &instr) {
  const Instruction &in = innermost(instr);
  return std::visit(
      [](const auto &v) -> std::vector<PatchId> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MultiBodyMeasure>) {
          std::vector<PatchId> out;
          for (const auto &o : v.operands) out.push_back(o.patch);
          return out;
        } else if constexpr (std::is_same_v<T, ConditionalCorrection>) {
          return {};
        } else {
          return {v.patch};
        }
      },
      in.op);
}

void validate(const Instruction &instr) {
  if (instr.is<ConditionalCorrection>()) {
    const auto &c = instr.as<ConditionalCorrection>();
    if (!c.body) throw Error(ErrorKind::InvalidArgument, "IF without body");
    if (c.condition.bit != 0 && c.condition.bit != 1) {
      throw Error(ErrorKind::InvalidArgument, "IF bit must be 0 or 1");
    }
    validate(*c.body);
    return;
  }
  if (!instr.is<MultiBodyMeasure>()) return;
  const auto &m = instr.as<MultiBodyMeasure>();
  if (m.operands.size() < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "multi-body measurement needs at least two patches");
  }
  std::vector<PatchId> ids;
  for (const auto &o : m.operands) {
    if (o.op == Pauli::I) {
      throw Error(ErrorKind::InvalidArgument,
                  "identity operand in multi-body measurement");
    }
    ids.push_back(o.patch);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw Error(ErrorKind::InvalidArgument,
                "patch repeated in multi-body measurement");
  }
}

namespace {

char basis_char(Basis b) { return b == Basis::X ? 'X' : 'Z'; }

struct Serializer {
  std::string &out;

  void operator()(const Init &v) const {
    out += "INIT " + std::to_string(v.patch) +
           (v.state == InitState::Zero ? " 0" : " +");
  }
  void operator()(const MeasureSingle &v) const {
    out += "MEAS " + std::to_string(v.patch) + ' ' + basis_char(v.basis);
  }
  void operator()(const MultiBodyMeasure &v) const {
    out += "MBM ";
    out += v.sign < 0 ? '-' : '+';
    for (std::size_t i = 0; i < v.operands.size(); ++i) {
      if (i) out += ',';
      out += to_char(v.operands[i].op);
      out += std::to_string(v.operands[i].patch);
    }
  }
  void operator()(const TransversalPauli &v) const {
    out += "PAULI " + std::to_string(v.patch) + ' ' + basis_char(v.op);
  }
  void operator()(const TransversalHadamard &v) const {
    out += "H " + std::to_string(v.patch);
  }
  void operator()(const BoundaryRotate &v) const {
    out += "ROT " + std::to_string(v.patch);
  }
  void operator()(const SGate &v) const {
    out += "S " + std::to_string(v.patch);
  }
  void operator()(const RequestMagicState &v) const {
    out += "MAGIC " + std::to_string(v.patch);
  }
  void operator()(const ConditionalCorrection &v) const {
    out += "IF " + std::to_string(v.condition.seq) + ' ' +
           std::to_string(v.condition.bit) + ' ';
    std::visit(*this, v.body->op);
  }
};

class Tokens {
 public:
  Tokens(std::string_view line, std::size_t line_number)
      : line_(line), line_number_(line_number) {}

  bool done() {
    skip();
    return pos_ >= line_.size();
  }

  std::string_view next(const char *what) {
    skip();
    if (pos_ >= line_.size()) {
      throw ParseError(line_number_, "<end of line>",
                       std::string("expected ") + what);
    }
    const std::size_t start = pos_;
    while (pos_ < line_.size() && line_[pos_] != ' ' && line_[pos_] != '\t')
      ++pos_;
    return line_.substr(start, pos_ - start);
  }

  [[noreturn]] void fail(std::string_view token, const std::string &msg) const {
    throw ParseError(line_number_, std::string(token), msg);
  }

  std::uint64_t number(std::string_view tok) const {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size() || tok.empty()) {
      fail(tok, "expected a non-negative integer");
    }
    return v;
  }

 private:
  void skip() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t'))
      ++pos_;
  }

  std::string_view line_;
  std::size_t line_number_;
  std::size_t pos_ = 0;
};

Basis parse_basis(Tokens &t) {
  const auto tok = t.next("X or Z");
  if (tok == "X") return Basis::X;
  if (tok == "Z") return Basis::Z;
  t.fail(tok, "expected X or Z");
}

MultiBodyMeasure parse_mbm(Tokens &t) {
  const auto tok = t.next("signed Pauli operand list");
  MultiBodyMeasure m;
  std::string_view rest = tok;
  if (!rest.empty() && (rest[0] == '+' || rest[0] == '-')) {
    m.sign = rest[0] == '-' ? -1 : 1;
    rest.remove_prefix(1);
  } else {
    t.fail(tok, "expected sign '+' or '-'");
  }
  while (true) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    if (item.size() < 2 || (item[0] != 'X' && item[0] != 'Y' && item[0] != 'Z')) {
      t.fail(item.empty() ? tok : item, "expected operand like Z3");
    }
    m.operands.push_back(
        {t.number(item.substr(1)), pauli_from_char(item[0])});
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return m;
}

Instruction parse_instruction(Tokens &t) {
  const auto mnemonic = t.next("instruction");
  if (mnemonic == "INIT") {
    const PatchId p = t.number(t.next("patch id"));
    const auto st = t.next("0 or +");
    if (st == "0") return Init{p, InitState::Zero};
    if (st == "+") return Init{p, InitState::Plus};
    t.fail(st, "expected initial state 0 or +");
  }
  if (mnemonic == "MEAS") {
    const PatchId p = t.number(t.next("patch id"));
    return MeasureSingle{p, parse_basis(t)};
  }
  if (mnemonic == "MBM") return parse_mbm(t);
  if (mnemonic == "PAULI") {
    const PatchId p = t.number(t.next("patch id"));
    return TransversalPauli{p, parse_basis(t)};
  }
  if (mnemonic == "H") return TransversalHadamard{t.number(t.next("patch id"))};
  if (mnemonic == "ROT") return BoundaryRotate{t.number(t.next("patch id"))};
  if (mnemonic == "S") return SGate{t.number(t.next("patch id"))};
  if (mnemonic == "MAGIC") {
    return RequestMagicState{t.number(t.next("patch id"))};
  }
  if (mnemonic == "IF") {
    const std::uint64_t seq = t.number(t.next("sequence number"));
    const auto bit_tok = t.next("outcome bit");
    if (bit_tok != "0" && bit_tok != "1") t.fail(bit_tok, "expected bit 0 or 1");
    Instruction body = parse_instruction(t);
    return make_conditional({seq, bit_tok == "1" ? 1 : 0}, std::move(body));
  }
  t.fail(mnemonic, "unknown instruction");
}

}  // namespace

std::string serialize_lli(const Instruction &instr) {
  std::string out;
  std::visit(Serializer{out}, instr.op);
  return out;
}

std::optional<Instruction> parse_lli(std::string_view line,
                                     std::size_t line_number) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                           line.back() == '\t')) {
    line.remove_suffix(1);
  }
  Tokens t(line, line_number);
  if (t.done()) return std::nullopt;
  Instruction instr = parse_instruction(t);
  if (!t.done()) {
    const auto extra = t.next("");
    t.fail(extra, "unexpected trailing token");
  }
  try {
    validate(instr);
  } catch (const Error &e) {
    throw ParseError(line_number, std::string(line), e.what());
  }
  return instr;
}

std::optional<Instruction> LliReader::next() {
  while (std::getline(in_, buffer_)) {
    ++line_;
    if (auto instr = parse_lli(buffer_, line_)) {
      ++count_;
      return instr;
    }
  }
  if (in_.bad()) throw Error(ErrorKind::Io, "read error on LLI stream");
  return std::nullopt;
}

}  // namespace surgec
