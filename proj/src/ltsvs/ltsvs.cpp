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

#include "surgec/ltsvs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <string>

#include "surgec/error.hpp"

namespace surgec {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;
constexpr double kImpossible = 1e-14;
const Amplitude kI{0.0, 1.0};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string patch_list(const std::vector<PatchId> &ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(ids[i]);
  }
  return s + "}";
}

}  // namespace

const char *to_string(StateTag tag) {
  switch (tag) {
    case StateTag::Zero: return "|0>";
    case StateTag::One: return "|1>";
    case StateTag::Plus: return "|+>";
    case StateTag::Minus: return "|->";
    case StateTag::Magic: return "|m>";
    case StateTag::YPlus: return "|Y+>";
    case StateTag::YMinus: return "|Y->";
  }
  return "?";
}

double StateGroup::norm() const {
  double n = 0;
  for (const Amplitude &a : amplitudes) n += std::norm(a);
  return std::sqrt(n);
}

std::optional<StateTag> recognize_state(const StateGroup &group) {
  if (group.members.size() != 1 || group.amplitudes.size() != 2) return std::nullopt;
  const Amplitude m = std::polar(1.0, M_PI / 4);
  const struct {
    StateTag tag;
    Amplitude a0, a1;
  } canon[] = {
      {StateTag::Zero, 1, 0},
      {StateTag::One, 0, 1},
      {StateTag::Plus, kSqrtHalf, kSqrtHalf},
      {StateTag::Minus, kSqrtHalf, -kSqrtHalf},
      {StateTag::Magic, kSqrtHalf, kSqrtHalf * m},
      {StateTag::YPlus, kSqrtHalf, kSqrtHalf * kI},
      {StateTag::YMinus, kSqrtHalf, -kSqrtHalf * kI},
  };
  const double n2 = std::norm(group.amplitudes[0]) + std::norm(group.amplitudes[1]);
  if (n2 == 0) return std::nullopt;
  for (const auto &c : canon) {
    const Amplitude overlap = std::conj(c.a0) * group.amplitudes[0] +
                              std::conj(c.a1) * group.amplitudes[1];
    if (std::norm(overlap) / n2 >= 1 - 1e-9) return c.tag;
  }
  return std::nullopt;
}

OutcomeChooser seeded_chooser(std::uint64_t seed) {
  return [seed](std::uint64_t seq, double p0) {
    const std::uint64_t x = splitmix64(splitmix64(seed) ^ seq);
    const double u = static_cast<double>(x >> 11) * 0x1.0p-53;
    return u < p0 ? 0 : 1;
  };
}

OutcomeChooser fixed_chooser(std::vector<int> bits) {
  auto state = std::make_shared<std::pair<std::vector<int>, std::size_t>>(
      std::move(bits), 0);
  return [state](std::uint64_t, double) {
    const std::size_t n = state->second++;
    return n < state->first.size() ? state->first[n] : 0;
  };
}

LazyState::LazyState(LtsvsConfig config)
    : config_(config), implicit_used_(config.implicit_patches, 0) {}

bool LazyState::live(PatchId id) const { return where_.count(id) != 0; }

const StateGroup &LazyState::group_of(PatchId id) const {
  auto it = where_.find(id);
  if (it == where_.end()) {
    throw Error(ErrorKind::UnknownPatch, "patch " + std::to_string(id) + " is not live");
  }
  return groups_[it->second];
}

std::optional<int> LazyState::outcome(std::uint64_t seq) const {
  auto it = outcomes_.find(seq);
  if (it == outcomes_.end()) return std::nullopt;
  return it->second;
}

std::size_t LazyState::largest_group() const {
  std::size_t n = 0;
  for (const auto &g : groups_) n = std::max(n, g.members.size());
  return n;
}

void LazyState::add_singleton(PatchId id, Amplitude a0, Amplitude a1) {
  where_[id] = groups_.size();
  groups_.push_back({{id}, {a0, a1}});
}

void LazyState::drop_group(std::size_t g) {
  const std::size_t last = groups_.size() - 1;
  if (g != last) {
    groups_[g] = std::move(groups_[last]);
    for (PatchId m : groups_[g].members) where_[m] = g;
  }
  groups_.pop_back();
}

std::size_t LazyState::ensure(PatchId id, std::uint64_t seq) {
  auto it = where_.find(id);
  if (it != where_.end()) return it->second;
  if (id < config_.implicit_patches) {
    if (!implicit_used_[id]) {
      implicit_used_[id] = 1;
      add_singleton(id, 1, 0);
      return where_.at(id);
    }
    throw Error(ErrorKind::DeadPatch, "#" + std::to_string(seq) + ": patch " +
                                          std::to_string(id) + " was already measured");
  }
  throw Error(ErrorKind::UnknownPatch, "#" + std::to_string(seq) + ": patch " +
                                           std::to_string(id) + " is not live");
}

std::size_t LazyState::merge(std::size_t a, std::size_t b, std::uint64_t seq) {
  if (a == b) return a;
  const std::size_t na = groups_[a].members.size();
  const std::size_t nb = groups_[b].members.size();
  if (na + nb >= 63 ||
      (std::size_t{1} << (na + nb)) > config_.max_amplitudes) {
    throw Error(ErrorKind::BudgetExceeded,
                "#" + std::to_string(seq) + ": merging groups " +
                    patch_list(groups_[a].members) + " and " +
                    patch_list(groups_[b].members) + " needs 2^" +
                    std::to_string(na + nb) + " amplitudes, budget is " +
                    std::to_string(config_.max_amplitudes));
  }
  StateGroup merged;
  merged.members = groups_[a].members;
  merged.members.insert(merged.members.end(), groups_[b].members.begin(),
                        groups_[b].members.end());
  const auto &va = groups_[a].amplitudes;
  const auto &vb = groups_[b].amplitudes;
  merged.amplitudes.resize(va.size() * vb.size());
  for (std::size_t j = 0; j < vb.size(); ++j) {
    for (std::size_t i = 0; i < va.size(); ++i) {
      merged.amplitudes[i | (j << na)] = va[i] * vb[j];
    }
  }
  const PatchId anchor = merged.members.front();
  groups_[a] = std::move(merged);
  for (PatchId m : groups_[a].members) where_[m] = a;
  drop_group(b);
  return where_.at(anchor);
}

void LazyState::apply_1q(PatchId id, const Amplitude u[4], std::uint64_t seq) {
  StateGroup &g = groups_[ensure(id, seq)];
  const auto k = static_cast<std::size_t>(
      std::find(g.members.begin(), g.members.end(), id) - g.members.begin());
  const std::size_t bit = std::size_t{1} << k;
  auto &v = g.amplitudes;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i & bit) continue;
    const Amplitude a = v[i];
    const Amplitude b = v[i | bit];
    v[i] = u[0] * a + u[1] * b;
    v[i | bit] = u[2] * a + u[3] * b;
  }
}

void LazyState::record(std::uint64_t seq, int bit) {
  outcomes_[seq] = bit;
  while (outcomes_.size() > config_.outcome_window) outcomes_.erase(outcomes_.begin());
}

int LazyState::decide(std::uint64_t seq, double p0, const OutcomeChooser &choose) {
  p0 = std::clamp(p0, 0.0, 1.0);
  const int bit = choose(seq, p0);
  const double p = bit == 0 ? p0 : 1 - p0;
  ++measurements_;
  record(seq, bit);
  if (p < kImpossible) {
    impossible_ = true;
    probability_ = 0;
  } else {
    probability_ *= p;
  }
  return bit;
}

namespace {
void check_norm(const StateGroup &g, std::uint64_t seq) {
  const double n = g.norm();
  if (std::abs(n - 1) > 1e-6) {
    throw Error(ErrorKind::Internal, "#" + std::to_string(seq) + ": group " +
                                         patch_list(g.members) + " has norm " +
                                         std::to_string(n));
  }
}
}  // namespace

int LazyState::measure_pauli(std::uint64_t seq, const MultiBodyMeasure &m,
                             const OutcomeChooser &choose) {
  std::size_t g = ensure(m.operands.front().patch, seq);
  for (const auto &o : m.operands) {
    ensure(o.patch, seq);
    g = merge(where_.at(m.operands.front().patch), where_.at(o.patch), seq);
  }
  StateGroup &grp = groups_[g];
  check_norm(grp, seq);
  std::size_t xmask = 0;
  std::size_t zmask = 0;
  int ny = 0;
  for (const auto &o : m.operands) {
    const auto k = static_cast<std::size_t>(
        std::find(grp.members.begin(), grp.members.end(), o.patch) -
        grp.members.begin());
    const std::size_t bit = std::size_t{1} << k;
    if (o.op == Pauli::X || o.op == Pauli::Y) xmask |= bit;
    if (o.op == Pauli::Z || o.op == Pauli::Y) zmask |= bit;
    if (o.op == Pauli::Y) ++ny;
  }
  static const Amplitude kPow[4] = {1, kI, -1, -kI};
  const Amplitude global = kPow[ny % 4] * static_cast<double>(m.sign);
  auto &v = grp.amplitudes;
  std::vector<Amplitude> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Amplitude ph = (std::popcount(i & zmask) & 1) ? -global : global;
    w[i ^ xmask] = ph * v[i];
  }
  double p0 = 0;
  for (std::size_t i = 0; i < v.size(); ++i) p0 += std::norm((v[i] + w[i]) * 0.5);
  const int bit = decide(seq, p0, choose);
  if (impossible_) return bit;
  const double r = bit == 0 ? 1.0 : -1.0;
  const double scale = 0.5 / std::sqrt(bit == 0 ? p0 : 1 - p0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (v[i] + r * w[i]) * scale;
  return bit;
}

int LazyState::measure_single(std::uint64_t seq, const MeasureSingle &m,
                              const OutcomeChooser &choose) {
  const PatchId id = m.patch;
  if (m.basis == Basis::X) {
    const Amplitude h[4] = {kSqrtHalf, kSqrtHalf, kSqrtHalf, -kSqrtHalf};
    apply_1q(id, h, seq);
  }
  const std::size_t g = ensure(id, seq);
  StateGroup &grp = groups_[g];
  check_norm(grp, seq);
  const auto k = static_cast<std::size_t>(
      std::find(grp.members.begin(), grp.members.end(), id) - grp.members.begin());
  const std::size_t bit = std::size_t{1} << k;
  double p0 = 0;
  for (std::size_t i = 0; i < grp.amplitudes.size(); ++i) {
    if (!(i & bit)) p0 += std::norm(grp.amplitudes[i]);
  }
  const int b = decide(seq, p0, choose);
  if (impossible_) return b;
  const double scale = 1 / std::sqrt(b == 0 ? p0 : 1 - p0);
  where_.erase(id);
  if (grp.members.size() == 1) {
    drop_group(g);
    return b;
  }
  // Drop bit k, keeping the half with value b.
  std::vector<Amplitude> out(grp.amplitudes.size() / 2);
  for (std::size_t j = 0; j < out.size(); ++j) {
    const std::size_t low = j & (bit - 1);
    const std::size_t high = (j & ~(bit - 1)) << 1;
    out[j] = grp.amplitudes[high | low | (b ? bit : 0)] * scale;
  }
  grp.amplitudes = std::move(out);
  grp.members.erase(grp.members.begin() + static_cast<std::ptrdiff_t>(k));
  return b;
}

std::optional<int> LazyState::apply(std::uint64_t seq, const Instruction &instr,
                                    const OutcomeChooser &choose) {
  if (impossible_) return std::nullopt;
  if (instr.is<ConditionalCorrection>()) {
    const auto &c = instr.as<ConditionalCorrection>();
    const auto o = outcome(c.condition.seq);
    if (!o) {
      throw Error(ErrorKind::InvalidArgument,
                  "#" + std::to_string(seq) + ": no recorded outcome for #" +
                      std::to_string(c.condition.seq));
    }
    if (*o != c.condition.bit) return std::nullopt;
    return apply(seq, *c.body, choose);
  }
  if (instr.is<Init>() || instr.is<RequestMagicState>()) {
    const PatchId id = patches_of(instr)[0];
    if (live(id)) {
      throw Error(ErrorKind::InvalidArgument, "#" + std::to_string(seq) + ": patch " +
                                                  std::to_string(id) +
                                                  " initialised while live");
    }
    if (id < config_.implicit_patches) implicit_used_[id] = 1;
    if (instr.is<RequestMagicState>()) {
      add_singleton(id, kSqrtHalf, kSqrtHalf * std::polar(1.0, M_PI / 4));
    } else if (instr.as<Init>().state == InitState::Plus) {
      add_singleton(id, kSqrtHalf, kSqrtHalf);
    } else {
      add_singleton(id, 1, 0);
    }
    return std::nullopt;
  }
  if (instr.is<TransversalPauli>()) {
    const auto &p = instr.as<TransversalPauli>();
    static const Amplitude x[4] = {0, 1, 1, 0};
    static const Amplitude z[4] = {1, 0, 0, -1};
    apply_1q(p.patch, p.op == Basis::X ? x : z, seq);
    return std::nullopt;
  }
  if (instr.is<TransversalHadamard>()) {
    static const Amplitude h[4] = {kSqrtHalf, kSqrtHalf, kSqrtHalf, -kSqrtHalf};
    apply_1q(instr.as<TransversalHadamard>().patch, h, seq);
    return std::nullopt;
  }
  if (instr.is<SGate>()) {
    static const Amplitude s[4] = {1, 0, 0, kI};
    apply_1q(instr.as<SGate>().patch, s, seq);
    return std::nullopt;
  }
  if (instr.is<BoundaryRotate>()) {
    ensure(instr.as<BoundaryRotate>().patch, seq);
    return std::nullopt;
  }
  if (instr.is<MeasureSingle>()) return measure_single(seq, instr.as<MeasureSingle>(), choose);
  if (instr.is<MultiBodyMeasure>()) {
    validate(instr);
    return measure_pauli(seq, instr.as<MultiBodyMeasure>(), choose);
  }
  throw Error(ErrorKind::Internal, "unhandled instruction in simulator");
}

std::vector<Amplitude> LazyState::amplitudes(const std::vector<PatchId> &order) const {
  std::vector<std::size_t> gs;
  for (PatchId id : order) {
    const std::size_t g = where_.count(id) ? where_.at(id) : SIZE_MAX;
    if (g == SIZE_MAX) {
      throw Error(ErrorKind::UnknownPatch, "patch " + std::to_string(id) + " is not live");
    }
    if (std::find(gs.begin(), gs.end(), g) == gs.end()) gs.push_back(g);
  }
  // position of each group member within `order`
  std::vector<std::vector<std::size_t>> pos(gs.size());
  for (std::size_t k = 0; k < gs.size(); ++k) {
    for (PatchId m : groups_[gs[k]].members) {
      auto it = std::find(order.begin(), order.end(), m);
      if (it == order.end()) {
        throw Error(ErrorKind::InvalidArgument,
                    "patch " + std::to_string(m) + " shares a group with the "
                    "requested patches but is not among them");
      }
      pos[k].push_back(static_cast<std::size_t>(it - order.begin()));
    }
  }
  std::vector<Amplitude> out(std::size_t{1} << order.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Amplitude a = 1;
    for (std::size_t k = 0; k < gs.size(); ++k) {
      std::size_t local = 0;
      for (std::size_t b = 0; b < pos[k].size(); ++b) {
        if (i >> pos[k][b] & 1) local |= std::size_t{1} << b;
      }
      a *= groups_[gs[k]].amplitudes[local];
    }
    out[i] = a;
  }
  return out;
}

void LazyState::check_invariants() const {
  std::size_t members = 0;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const StateGroup &grp = groups_[g];
    if (grp.members.empty() ||
        grp.amplitudes.size() != (std::size_t{1} << grp.members.size())) {
      throw Error(ErrorKind::Internal, "group " + patch_list(grp.members) +
                                           " has the wrong dimension");
    }
    if (!impossible_ && std::abs(grp.norm() - 1) > 1e-9) {
      throw Error(ErrorKind::Internal, "group " + patch_list(grp.members) +
                                           " is not normalised");
    }
    for (PatchId m : grp.members) {
      auto it = where_.find(m);
      if (it == where_.end() || it->second != g) {
        throw Error(ErrorKind::Internal,
                    "patch " + std::to_string(m) + " is indexed to the wrong group");
      }
    }
    members += grp.members.size();
  }
  if (members != where_.size()) {
    throw Error(ErrorKind::Internal, "groups do not partition the live patches");
  }
}

}  // namespace surgec
