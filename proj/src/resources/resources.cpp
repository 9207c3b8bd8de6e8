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

#include "surgec/resources.hpp"

#include <cmath>
#include <random>

#include "surgec/error.hpp"
#include "surgec/layout.hpp"
#include "surgec/slicer.hpp"

namespace surgec {

namespace {
constexpr int kMaxDistance = 100001;
}

double logical_error_rate(double p, int d, const ErrorModel &model) {
  if (!(p > 0) || !(p < model.threshold)) {
    throw Error(ErrorKind::Threshold,
                "physical error rate " + std::to_string(p) +
                    " must lie in (0, " + std::to_string(model.threshold) + ")");
  }
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "code distance must be positive");
  return model.prefactor * std::pow(p / model.threshold, (d + 1) / 2);
}

ResourceReport min_distance(const ResourceQuery &q, const ErrorModel &model) {
  if (!(q.success > 0) || !(q.success < 1)) {
    throw Error(ErrorKind::InvalidArgument, "success probability must lie in (0, 1)");
  }
  logical_error_rate(q.physical_error_rate, 1, model);  // threshold guard
  const double volume = static_cast<double>(q.cells) * static_cast<double>(q.slices);
  const double budget = (1 - q.success) * (1 + 1e-12);
  ResourceReport r;
  r.volume = q.cells * q.slices;
  for (int d = 1; d <= kMaxDistance; d += 2) {
    const double bound = volume * logical_error_rate(q.physical_error_rate, d, model);
    if (bound <= budget) {
      r.distance = d;
      r.failure_bound = bound;
      r.qubits_per_patch = static_cast<std::uint64_t>(
          std::llround(model.qubits_per_patch_factor * d * d));
      r.total_qubits = r.qubits_per_patch * q.cells;
      return r;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "no code distance up to " +
                                              std::to_string(kMaxDistance) +
                                              " meets the target");
}

Circuit random_htc_circuit(std::uint64_t width, std::uint64_t depth, std::uint64_t seed) {
  Circuit c;
  c.num_qubits = width;
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> used(width);
  for (std::uint64_t layer = 0; layer < depth; ++layer) {
    std::fill(used.begin(), used.end(), 0);
    for (std::uint64_t q = 0; q < width; ++q) {
      if (used[q]) continue;
      const auto choice = rng() % 3;
      std::vector<std::uint64_t> free;
      for (std::uint64_t o = q + 1; o < width; ++o) {
        if (!used[o]) free.push_back(o);
      }
      used[q] = 1;
      if (choice == 2 && !free.empty()) {
        const std::uint64_t t = free[rng() % free.size()];
        used[t] = 1;
        c.gates.push_back(make_gate(GateKind::CX, {q, t}));
      } else {
        c.gates.push_back(make_gate(choice == 1 ? GateKind::T : GateKind::H, {q}));
      }
    }
  }
  return c;
}

std::string auto_layout(std::uint64_t num_qubits) {
  std::uint64_t k = 1;
  while (k * k < num_qubits) ++k;
  const std::uint64_t cols = std::max<std::uint64_t>(2 * k + 1, 5);
  std::string out;
  out += std::string(cols, 'r') + '\n';
  std::uint64_t placed = 0;
  for (std::uint64_t row = 0; row < k; ++row) {
    std::string line(cols, 'r');
    for (std::uint64_t col = 0; col < k && placed < num_qubits; ++col, ++placed) {
      line[2 * col + 1] = 'Q';
    }
    out += line + '\n' + std::string(cols, 'r') + '\n';
  }
  for (int i = 0; i < 2; ++i) out += "111" + std::string(cols - 3, 'r') + '\n';
  return out;
}

std::vector<SweepPoint> sweep(const SweepConfig &config,
                              const std::function<void(const SweepPoint &)> &on_point) {
  if (config.widths.empty() || config.depths.empty()) {
    throw Error(ErrorKind::InvalidArgument, "sweep ranges must not be empty");
  }
  std::vector<SweepPoint> points;
  for (std::uint64_t w : config.widths) {
    for (std::uint64_t d : config.depths) {
      SweepPoint pt;
      pt.width = w;
      pt.depth = d;
      try {
        const Circuit circuit = random_htc_circuit(w, d, config.seed);
        const std::vector<Instruction> lli = compile_circuit(circuit, config.compiler);
        const Layout layout = parse_layout(auto_layout(w));
        SlicerConfig sc;
        sc.render = false;
        sc.distill_period = config.distill_period;
        const RunStats stats = run_stream(lli, layout, {}, sc);
        pt.lli = lli.size();
        pt.cells = stats.cells;
        pt.slices = stats.slices;
        ResourceQuery q;
        q.physical_error_rate = config.physical_error_rate;
        q.success = config.success;
        q.cells = stats.cells;
        q.slices = stats.slices;
        pt.report = min_distance(q, config.model);
      } catch (const std::exception &e) {
        pt.error = e.what();
      }
      if (on_point) on_point(pt);
      points.push_back(std::move(pt));
    }
  }
  return points;
}

void write_sweep_csv_header(std::ostream &out) {
  out << "width,depth,lli,cells,slices,volume,distance,qubits,failure_bound,error\n";
}

void write_sweep_csv_row(std::ostream &out, const SweepPoint &p) {
  out << p.width << ',' << p.depth << ',' << p.lli << ',' << p.cells << ',' << p.slices
      << ',';
  if (p.report) {
    out << p.report->volume << ',' << p.report->distance << ','
        << p.report->total_qubits << ',' << p.report->failure_bound << ',';
  } else {
    out << ",,,,";
  }
  std::string err = p.error;
  for (char &c : err) {
    if (c == '"') c = '\'';
  }
  if (!err.empty()) out << '"' << err << '"';
  out << '\n';
}

}  // namespace surgec
