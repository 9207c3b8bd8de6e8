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

#include "surgec/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "pipeline/su2.hpp"
#include "surgec/error.hpp"

namespace surgec {

namespace {

// Canonical sign so that q and -q hash alike.
su2::Quat canonical(su2::Quat q) {
  for (double x : q) {
    if (std::abs(x) > 1e-9) {
      if (x < 0) {
        for (double &y : q) y = -y;
      }
      break;
    }
  }
  return q;
}

std::uint64_t mix(std::uint64_t h, std::int64_t v) {
  h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t cell_hash(const std::array<std::int64_t, 4> &k) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::int64_t v : k) h = mix(h, v);
  return h;
}

// Clifford+T words in Matsumoto-Amano normal form (T|)(HT|SHT)^k without the
// trailing Clifford. Distinct words are distinct unitaries, so no
// deduplication is needed. Shortest (fewest T) first.
struct Table {
  std::vector<su2::Quat> quat;
  std::vector<std::string> word;
  std::vector<int> tcount;
  // The 24 single-qubit Cliffords up to phase, shortest words.
  std::vector<su2::Quat> clifford;
  std::vector<std::string> clifford_word;
};

std::unique_ptr<Table> build_table(std::size_t size) {
  auto t = std::make_unique<Table>();
  auto add = [&](std::string w) {
    t->quat.push_back(su2::word(w));
    t->tcount.push_back(static_cast<int>(std::count(w.begin(), w.end(), 'T')));
    t->word.push_back(std::move(w));
  };
  add("");
  if (size > 1) add("T");
  for (std::size_t head = 0; head < t->word.size() && t->word.size() < size; ++head) {
    for (const char *block : {"HT", "SHT"}) {
      if (t->word.size() >= size) break;
      add(t->word[head] + block);
    }
  }

  std::map<std::array<std::int64_t, 4>, bool> seen;
  auto key = [](const su2::Quat &q) {
    const su2::Quat c = canonical(q);
    std::array<std::int64_t, 4> k{};
    for (int i = 0; i < 4; ++i) k[i] = std::llround(c[i] * 1e9);
    return k;
  };
  std::vector<std::string> queue{""};
  seen[key(su2::word(""))] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (char g : {'H', 'S', 'X', 'Z'}) {
      std::string w = queue[head] + g;
      if (seen.emplace(key(su2::word(w)), true).second) queue.push_back(w);
    }
  }
  for (const std::string &w : queue) {
    t->clifford.push_back(su2::word(w));
    t->clifford_word.push_back(w);
  }
  return t;
}

const Table &shared_table(std::size_t size) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<Table>> tables;
  std::lock_guard lock(mu);
  auto &slot = tables[size];
  if (!slot) slot = build_table(size);
  return *slot;
}

std::optional<char> combine(char a, char b) {
  if (a == b && (a == 'H' || a == 'X' || a == 'Z')) return 'I';
  if (a == 'T' && b == 'T') return 'S';
  if (a == 'S' && b == 'S') return 'Z';
  return std::nullopt;
}

}  // namespace

// Spatial hash of every product C * B (Clifford times table word, both
// signs) with cells twice the tolerance, so any point within epsilon of a
// query lies in one of 16 cells. Entries are (32-bit cell hash, c * N + b),
// sorted; hash collisions only add candidates that the distance check drops.
struct Approximator::Grid {
  double cell;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;

  Grid(const Table &t, double epsilon) : cell(2 * epsilon) {
    const std::size_t n = t.quat.size();
    entries.reserve(2 * n * t.clifford.size());
    for (std::size_t c = 0; c < t.clifford.size(); ++c) {
      for (std::size_t b = 0; b < n; ++b) {
        const su2::Quat q = su2::mul(t.clifford[c], t.quat[b]);
        for (int s : {1, -1}) {
          std::array<std::int64_t, 4> k{};
          for (int j = 0; j < 4; ++j) {
            k[j] = static_cast<std::int64_t>(std::floor(s * q[j] / cell));
          }
          entries.emplace_back(static_cast<std::uint32_t>(cell_hash(k)),
                               static_cast<std::uint32_t>(c * n + b));
        }
      }
    }
    std::sort(entries.begin(), entries.end());
  }
};

double sequence_distance(std::string_view letters, double angle) {
  return su2::distance(su2::word(letters), su2::z_rotation(angle));
}

std::optional<std::string> exact_letters(const ExactAngle &angle) {
  const auto k = angle.as_eighths();
  if (!k) return std::nullopt;
  static const char *const kTable[8] = {"",   "T",  "S",  "ST",
                                        "Z",  "ZT", "ZS", "ZST"};
  return std::string(kTable[((*k % 8) + 8) % 8]);
}

std::string simplify_letters(std::string_view letters) {
  std::string out;
  for (char c : letters) {
    char cur = c;
    while (!out.empty()) {
      const auto r = combine(out.back(), cur);
      if (!r) break;
      out.pop_back();
      cur = *r;
      if (cur == 'I') break;
    }
    if (cur != 'I') out += cur;
  }
  return out;
}

void ApproximationCache::load(std::istream &in, const std::string &source) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream fields(line);
    std::string key;
    std::string eps_text;
    std::string letters;
    if (!(fields >> key)) continue;
    if (!(fields >> eps_text)) {
      throw ParseError(n, key, source + ": expected '<angle> <epsilon> <letters>'");
    }
    fields >> letters;  // empty for the identity
    std::string extra;
    if (fields >> extra) throw ParseError(n, extra, source + ": trailing field");
    ExactAngle angle;
    double eps = 0;
    try {
      angle = ExactAngle::from_string(key);
      eps = std::stod(eps_text);
    } catch (const std::exception &) {
      throw ParseError(n, key + " " + eps_text, source + ": malformed entry");
    }
    std::string clean;
    for (char c : letters) {
      if (c == 'W') continue;
      if (std::string_view("HSTXZ").find(c) == std::string_view::npos) {
        throw ParseError(n, std::string(1, c), source + ": unknown letter");
      }
      clean += c;
    }
    // Double arithmetic resolves about 1e-12 over a few thousand letters;
    // below that only gross errors are detectable.
    const double err = sequence_distance(clean, angle.radians());
    const double slack = std::max(eps, 1e-9) + 1e-13 * clean.size();
    if (!(eps > 0) || err > slack) {
      throw ParseError(n, key, source + ": sequence misses its angle by " +
                                   std::to_string(err));
    }
    insert(angle, {std::move(clean), eps});
  }
  if (in.bad()) throw Error(ErrorKind::Io, "read error on " + source);
}

void ApproximationCache::load_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open cache file '" + path + "'");
  load(in, path);
}

void ApproximationCache::insert(const ExactAngle &angle, Entry entry) {
  auto [it, inserted] = entries_.emplace(angle.to_string(), entry);
  if (!inserted && entry.epsilon < it->second.epsilon) it->second = entry;
}

std::optional<ApproximationCache::Entry> ApproximationCache::find(
    const ExactAngle &angle, double epsilon) const {
  auto it = entries_.find(angle.to_string());
  if (it == entries_.end() || it->second.epsilon > epsilon) return std::nullopt;
  return it->second;
}

Approximator::Approximator(ApproximatorConfig config)
    : config_(std::move(config)) {
  if (!(config_.epsilon > 0)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  }
}

Approximator::~Approximator() = default;

std::string Approximator::approximate(const ExactAngle &angle) {
  if (auto exact = exact_letters(angle)) return *exact;
  const std::string key = angle.to_string();
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  const long m = std::lround(angle.radians() / (std::numbers::pi / 4));
  const ExactAngle base(BigInt(m), 2);
  const ExactAngle residual = angle - base;
  std::string letters;
  if (auto exact = exact_letters(residual)) {
    letters = *exact;
  } else {
    letters = search(residual);
  }
  letters = simplify_letters(*exact_letters(base) + letters);
  memo_.emplace(key, letters);
  return letters;
}

std::string Approximator::search(const ExactAngle &residual) {
  const double eps = config_.epsilon;
  if (config_.cache) {
    if (auto e = config_.cache->find(residual, eps)) return e->letters;
  }
  if (config_.cache_only) {
    throw Error(ErrorKind::MissingCacheEntry,
                "no cached sequence for Z(" + residual.to_string() +
                    " pi) at epsilon " + std::to_string(eps));
  }
  ++searches_;
  const su2::Quat target = su2::z_rotation(residual.radians());

  // U ~ A * C * B. Score (T count, length, a, c * n + b), lexicographic.
  using Score = std::tuple<int, std::size_t, std::size_t, std::uint32_t>;
  auto join = [&](const Table &t, const Grid &grid) {
    std::optional<Score> best;
    const std::size_t n = t.quat.size();
    for (std::size_t a = 0; a < n; ++a) {
      if (best && t.tcount[a] > std::get<0>(*best)) break;  // tcount is sorted
      const su2::Quat want = su2::mul(su2::conj(t.quat[a]), target);
      std::array<std::int64_t, 4> base{};
      std::array<int, 4> step{};
      for (int j = 0; j < 4; ++j) {
        const double x = want[j] / grid.cell;
        base[j] = static_cast<std::int64_t>(std::floor(x));
        step[j] = (x - std::floor(x)) < 0.5 ? -1 : 1;
      }
      for (int mask = 0; mask < 16; ++mask) {
        std::array<std::int64_t, 4> k = base;
        for (int j = 0; j < 4; ++j) {
          if (mask & (1 << j)) k[j] += step[j];
        }
        const auto h = static_cast<std::uint32_t>(cell_hash(k));
        auto it = std::lower_bound(grid.entries.begin(), grid.entries.end(),
                                   std::make_pair(h, std::uint32_t{0}));
        for (; it != grid.entries.end() && it->first == h; ++it) {
          const std::uint32_t id = it->second;
          const std::size_t c = id / n;
          const std::size_t b = id % n;
          const su2::Quat prod =
              su2::mul(t.quat[a], su2::mul(t.clifford[c], t.quat[b]));
          if (su2::distance(prod, target) > eps) continue;
          const Score sc{t.tcount[a] + t.tcount[b],
                         t.word[a].size() + t.clifford_word[c].size() + t.word[b].size(),
                         a, id};
          if (!best || sc < *best) best = sc;
        }
      }
    }
    return best;
  };

  // Small tables first: most angles need far fewer T gates than the budget.
  std::size_t size = std::min<std::size_t>(config_.table_size, 1 << 12);
  while (true) {
    const Table &t = shared_table(size);
    auto &grid = grids_[size];
    if (!grid) grid = std::make_unique<Grid>(t, eps);
    if (auto best = join(t, *grid)) {
      const std::size_t n = t.quat.size();
      const std::size_t a = std::get<2>(*best);
      const std::uint32_t id = std::get<3>(*best);
      std::string letters = simplify_letters(t.word[a] + t.clifford_word[id / n] +
                                             t.word[id % n]);
      if (sequence_distance(letters, residual.radians()) > eps) {
        throw Error(ErrorKind::Internal, "approximation failed its own check");
      }
      return letters;
    }
    if (size >= config_.table_size) break;
    size = std::min(size * 4, config_.table_size);
  }
  throw Error(ErrorKind::NoApproximationFound,
              "no Clifford+T sequence within " + std::to_string(eps) + " of Z(" +
                  residual.to_string() + " pi) in the search budget");
}

std::string approximate_rotation(const ExactAngle &angle, double epsilon) {
  ApproximatorConfig config;
  config.epsilon = epsilon;
  Approximator a(config);
  return a.approximate(angle);
}

}  // namespace surgec
