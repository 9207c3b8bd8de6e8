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
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "surgec/compiler.hpp"
#include "surgec/qasm.hpp"

namespace surgec {

/// Surface-code heuristic p_L(d) = prefactor * (p / threshold)^((d + 1) / 2),
/// with 2 d^2 physical qubits per patch (data plus syndrome). The numbers are
/// relative to this model and nothing more.
struct ErrorModel {
  double prefactor = 0.1;
  double threshold = 1e-2;
  double qubits_per_patch_factor = 2.0;  // times d^2
};

struct ResourceQuery {
  double physical_error_rate = 1e-3;
  std::uint64_t cells = 0;
  std::uint64_t slices = 0;
  double success = 0.99;
};

struct ResourceReport {
  int distance = 1;
  std::uint64_t qubits_per_patch = 0;
  std::uint64_t total_qubits = 0;
  std::uint64_t volume = 0;  // cells * slices
  double failure_bound = 0;  // volume * p_L(distance)
};

/// Logical failure probability per patch per slice. Throws Error(Threshold)
/// unless 0 < p < threshold.
double logical_error_rate(double p, int d, const ErrorModel &model = {});

/// Smallest odd d whose union bound volume * p_L(d) stays within 1 - success
/// (compared with a relative slack of 1e-12, so exact boundary cases such as
/// 10^6 * 1e-8 = 0.01 are accepted).
ResourceReport min_distance(const ResourceQuery &query, const ErrorModel &model = {});

/// Seeded random circuit of `depth` layers over `width` qubits. In each layer
/// every qubit not yet used gets H, T or (with a random free partner) CX.
/// Deeper circuits with the same seed extend shallower ones.
Circuit random_htc_circuit(std::uint64_t width, std::uint64_t depth, std::uint64_t seed);

/// Layout text with the qubits on a spaced square grid, routing around them
/// and one 3x2 distillation region below.
std::string auto_layout(std::uint64_t num_qubits);

struct SweepConfig {
  std::vector<std::uint64_t> widths;
  std::vector<std::uint64_t> depths;
  double physical_error_rate = 1e-3;
  double success = 0.99;
  std::uint64_t seed = 1;
  CompilerOptions compiler;
  int distill_period = 6;
  ErrorModel model;
};

struct SweepPoint {
  std::uint64_t width = 0;
  std::uint64_t depth = 0;
  std::uint64_t lli = 0;
  std::uint64_t cells = 0;
  std::uint64_t slices = 0;
  std::optional<ResourceReport> report;
  std::string error;  // set when the point failed
};

/// Compiles and slices one random circuit per grid point. Failures are
/// recorded in the point and do not stop the sweep.
std::vector<SweepPoint> sweep(const SweepConfig &config,
                              const std::function<void(const SweepPoint &)> &on_point = {});

void write_sweep_csv_header(std::ostream &out);
void write_sweep_csv_row(std::ostream &out, const SweepPoint &point);

}  // namespace surgec
