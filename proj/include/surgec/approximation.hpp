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

#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "surgec/exact_angle.hpp"

namespace surgec {

// Letter sequences are strings over {H, S, T, X, Z} read as a matrix product:
// "HT" is the unitary H*T, so T acts first. S = Z(pi/4), T = Z(pi/8) up to
// global phase, with Z(a) = exp(-i a Z).

/// Operator-norm distance between the sequence's unitary and Z(angle),
/// minimised over global phase.
double sequence_distance(std::string_view letters, double angle);

/// Exact letters for k*pi/8 angles; nullopt otherwise.
std::optional<std::string> exact_letters(const ExactAngle &angle);

/// Externally generated sequences, one per line:
///   <numerator>/2^<power> <epsilon> <letters>
/// keyed by the rotation angle of Z(angle). 'W' (a global phase) is dropped.
class ApproximationCache {
 public:
  struct Entry {
    std::string letters;
    double epsilon;
  };

  void load(std::istream &in, const std::string &source = "<cache>");
  void load_file(const std::string &path);
  void insert(const ExactAngle &angle, Entry entry);
  /// An entry at least as precise as `epsilon`, if any.
  std::optional<Entry> find(const ExactAngle &angle, double epsilon) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, Entry> entries_;
};

struct ApproximatorConfig {
  double epsilon = 1e-3;
  std::shared_ptr<const ApproximationCache> cache;
  bool cache_only = false;
  /// Largest table of normal-form words used by the builtin search. It joins
  /// word * Clifford * word, so reachable T counts roughly double those in
  /// the table (2^18 words reach 17 T gates per side, enough for 1e-3).
  /// Smaller tables are tried first, growing 4x per step.
  std::size_t table_size = std::size_t{1} << 18;
};

/// Clifford+T approximation of Z(angle). Multiples of pi/8 are returned
/// exactly; other angles are split into the nearest multiple of pi/4 and a
/// residual of magnitude below pi/8, which is looked up in the cache or
/// searched for. Results are memoised per instance and deterministic.
class Approximator {
 public:
  explicit Approximator(ApproximatorConfig config = {});
  ~Approximator();

  std::string approximate(const ExactAngle &angle);
  const ApproximatorConfig &config() const { return config_; }
  std::size_t searches() const { return searches_; }

 private:
  std::string search(const ExactAngle &residual);

  struct Grid;
  ApproximatorConfig config_;
  std::map<std::string, std::string> memo_;
  std::map<std::size_t, std::unique_ptr<Grid>> grids_;  // by table size
  std::size_t searches_ = 0;
};

/// One-shot convenience wrapper around Approximator.
std::string approximate_rotation(const ExactAngle &angle, double epsilon);

/// Collapses letter pairs that multiply to a single letter or the identity.
std::string simplify_letters(std::string_view letters);

}  // namespace surgec
