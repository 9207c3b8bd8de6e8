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

// Acceptance run: one PASS/FAIL line per criterion, 1 to 13.
//
// Usage: surgec_acceptance --cli BIN --python PY --schema FILE --validator FILE
//          --layouts DIR --data DIR [--report FILE] [--expect-fail N,...]
//          [--only N,...]
//
// Exit status is 0 when the set of failing criteria equals the expected set
// (empty by default), 1 otherwise.

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "properties.hpp"
#include "surgec/approximation.hpp"
#include "surgec/compiler.hpp"
#include "surgec/decompose.hpp"
#include "surgec/resources.hpp"

namespace {

using namespace surgec;

struct Options {
  std::string cli, python, schema, validator, layouts, data, report;
  std::set<int> expect_fail, only;
};

Options opts;

struct Result {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::set<int> parse_set(const std::string &s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(std::stoi(item));
  }
  return out;
}

std::string quote(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

std::string shell(const std::string &cmd, int *status) {
  std::string out;
  FILE *p = popen(cmd.c_str(), "r");
  if (!p) {
    *status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  *status = pclose(p);
  return out;
}

// ------------------------------------------------------------- criteria

Result c1_compression_example() {
  const auto blocks = compress_to_pauli_rotations("HSHTSHX");
  const std::vector<RotationBlock> want{
      PauliRotation{PauliProduct::single(0, Pauli::X), ExactAngle::eighths(2)},
      PauliRotation{PauliProduct::single(0, Pauli::Z), ExactAngle::eighths(3)},
      ResidualClifford{'H', 0}, ResidualClifford{'X', 0}};
  std::string got;
  for (const auto &b : blocks) got += (got.empty() ? "" : ", ") + to_string(b);
  return {blocks == want, "HSHTSHX -> [" + got + "]"};
}

Result c2_controlled_rotation() {
  double worst = 0;
  for (std::uint32_t k = 1; k <= 16; ++k) {
    const Gate g = make_gate(GateKind::CRZ, {0, 1}, ExactAngle::pi_over_pow2(k));
    const Circuit parts{2, decompose_controlled(g)};
    const double a = std::pow(2.0, -static_cast<double>(k)) * std::numbers::pi;
    const oracle::Mat phase = oracle::mat2(1, 0, 0, std::polar(1.0, a));
    worst = std::max(worst, oracle::phase_distance(oracle::circuit(parts),
                                                   oracle::controlled(phase, 0, 1, 2)));
  }
  return {worst <= 1e-10, fmt("max distance %.2e over k = 1..16 (bar 1e-10)", worst)};
}

Result c3_litinski() {
  std::mt19937_64 rng(2024);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Circuit c = props::random_circuit(rng, 1 + trial % 3, 4 + static_cast<int>(rng() % 20));
    worst = std::max(worst, props::litinski_tv(c));
  }
  return {worst <= 1e-9, fmt("200 circuits, max total variation %.2e (bar 1e-9)", worst)};
}

Result c4_lowering() {
  std::mt19937_64 rng(99);
  constexpr std::size_t n = 3;
  double worst = 1;
  std::size_t branches = 0, checks = 0;
  std::string worst_name;
  bool probability_ok = true;
  for (const auto &t : props::lowering_templates(n)) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto r = props::check_template(t, n, rng);
      ++checks;
      branches += r.branches;
      probability_ok = probability_ok && std::abs(r.total_probability - 1) <= 1e-9;
      if (r.min_fidelity < worst) {
        worst = r.min_fidelity;
        worst_name = t.name;
      }
    }
  }
  return {worst >= 1 - 1e-9 && probability_ok,
          fmt("%zu template runs, %zu branches, min fidelity 1 - %.1e%s", checks, branches,
              1 - worst, probability_ok ? "" : ", branch probabilities do not sum to 1")};
}

Result c5_ltsvs() {
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const PatchId patches = 2 + trial % 5;
    const auto r = props::compare_simulators(trial, patches, trial % 3 == 0 ? 0 : 2,
                                             10 + trial % 40);
    if (!r.outcomes_agree) return {false, fmt("trial %d: outcomes differ at %s", trial, r.where.c_str())};
    worst = std::max(worst, r.distance);
  }
  return {worst <= 1e-9, fmt("200 streams on <= 6 patches, max state distance %.2e", worst)};
}

Result c6_compression_ratio() {
  ApproximationCache cache;
  cache.load_file(opts.data + "/rz_pow2_eps1e-10.cache");
  std::uint64_t direct = 0, compressed = 0, direct_q = 0, compressed_q = 0;
  int found = 0;
  for (std::uint32_t n = 8; n <= 32; ++n) {
    // R_Z(pi/2^n) is the Pauli rotation Z(pi/2^(n+1)).
    const auto e = cache.find(ExactAngle::pi_over_pow2(n + 1), 1e-10);
    if (!e) continue;
    ++found;
    direct += count_sequence_lli(e->letters, LoweringMode::Direct);
    compressed += count_sequence_lli(e->letters, LoweringMode::Compressed);
    direct_q += count_sequence_lli(e->letters, LoweringMode::Direct, false);
    compressed_q += count_sequence_lli(e->letters, LoweringMode::Compressed, false);
  }
  if (found != 25) return {false, fmt("cache holds %d of the 25 angles", found)};
  const double ratio = static_cast<double>(direct) / compressed;
  const double ratio_q = static_cast<double>(direct_q) / compressed_q;
  return {ratio >= 2.0,
          fmt("direct/compressed = %llu/%llu = %.3f (bar 2.0); without IF lines %.3f",
              static_cast<unsigned long long>(direct), static_cast<unsigned long long>(compressed),
              ratio, ratio_q)};
}

Result c7_layouts() {
  const Layout a = load_layout(opts.layouts + "/example1.txt");
  const Layout b = load_layout(opts.layouts + "/example2.txt");
  const Layout c = parse_layout("11r11\n");
  const bool ok = a.count(CellKind::Qubit) == 2 && a.count(CellKind::Routing) == 4 &&
                  a.regions().empty() && b.count(CellKind::Qubit) == 7 &&
                  b.regions().size() == 4 && b.count(CellKind::Ancilla) == 1 &&
                  c.regions().size() == 2;
  return {ok, fmt("example 1: %zu Q / %zu r / %zu regions; example 2: %zu Q / %zu regions / "
                  "%zu A; split digit area: %zu regions",
                  a.count(CellKind::Qubit), a.count(CellKind::Routing), a.regions().size(),
                  b.count(CellKind::Qubit), b.regions().size(), b.count(CellKind::Ancilla),
                  c.regions().size())};
}

Result c8_routing() {
  std::mt19937_64 rng(8);
  int checked = 0, unroutable = 0, wrong = 0, unstable = 0;
  while (checked < 50) {
    const auto r = props::check_route(rng);
    unstable += !r.repeat_identical;
    if (r.expected < 0) {
      ++unroutable;
      wrong += r.routed != -1;
      continue;
    }
    wrong += r.routed != r.expected;
    ++checked;
  }
  return {wrong == 0 && unstable == 0,
          fmt("50 routable layouts (+%d unroutable): %d length mismatches, %d non-identical "
              "repeats",
              unroutable, wrong, unstable)};
}

// Synthetic lattice traffic over the first `data` Q cells: a fresh ancilla
// joins a data patch, is measured and triggers a correction.
LliSource synthetic_stream(std::uint64_t total, std::uint64_t data) {
  auto state = std::make_shared<std::uint64_t>(0);
  return [=]() -> std::optional<Instruction> {
    const std::uint64_t i = (*state)++;
    if (i >= total) return std::nullopt;
    const std::uint64_t round = i / 5;
    const PatchId q = round % data;
    const PatchId other = (round * 7 + 3) % data == q ? (q + 1) % data : (round * 7 + 3) % data;
    const PatchId anc = data + round;
    switch (i % 5) {
      case 0: return Instruction(Init{anc, InitState::Plus});
      case 1: {
        MultiBodyMeasure m;
        m.operands = {{q, Pauli::Z}, {anc, Pauli::Z}};
        return Instruction(m);
      }
      case 2: return Instruction(MeasureSingle{anc, Basis::X});
      case 3: {
        MultiBodyMeasure m;
        m.operands = {{q, Pauli::X}, {other, Pauli::Z}};
        return Instruction(m);
      }
      default:
        return make_conditional({i - 2, 1}, TransversalPauli{q, Basis::Z});
    }
  };
}

std::string grid_layout(int rows, int cols) {
  std::string text;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) text += (r % 3 == 1 && c % 3 == 1) ? 'Q' : 'r';
    text += '\n';
  }
  return text;
}

// Child mode: slice a synthetic stream and exit.
int stream_child(std::uint64_t total) {
  const Layout l = parse_layout(grid_layout(20, 20));
  std::uint64_t sink = 0;
  run_stream(synthetic_stream(total, 20), l, [&](const Slice &s) {
    sink += slice_to_json(s).size();
  });
  return sink > 0 ? 0 : 3;
}

long child_maxrss_kb(std::uint64_t total) {
  const pid_t pid = fork();
  if (pid == 0) {
    const std::string n = std::to_string(total);
    execl("/proc/self/exe", "surgec_acceptance", "--stream-child", n.c_str(),
          static_cast<char *>(nullptr));
    _exit(127);
  }
  int status = 0;
  struct rusage ru {};
  if (pid < 0 || wait4(pid, &status, 0, &ru) < 0) return -1;
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return -1;
  return ru.ru_maxrss;
}

Result c9_memory() {
  const long small = child_maxrss_kb(10000);
  const long large = child_maxrss_kb(1000000);
  if (small < 0 || large < 0) return {false, "synthetic stream child failed"};
  const double ratio = static_cast<double>(large) / small;
  return {ratio <= 2.0, fmt("peak RSS %ld KiB for 1e6 LLI vs %ld KiB for 1e4 (ratio %.2f, bar 2)",
                            large, small, ratio)};
}

Result c10_throughput() {
  const Layout l = parse_layout(grid_layout(20, 20));
  const std::uint64_t total = 200000;
  std::uint64_t cells = 0;
  const auto t0 = std::chrono::steady_clock::now();
  const RunStats st = run_stream(synthetic_stream(total, 36), l, [&](const Slice &s) {
    for (const auto &c : s.cells) cells += c.kind != ActivityKind::Free;
  });
  const double dt = seconds_since(t0);
  const double rate = static_cast<double>(st.lli) / dt;
  return {rate >= 1e4 && st.lli == total,
          fmt("%llu LLI in %.2f s on 20x20 with rendering: %.3g LLI/s (bar 1e4)",
              static_cast<unsigned long long>(st.lli), dt, rate)};
}

Result c11_qft_scaling() {
  auto cache = std::make_shared<ApproximationCache>();
  cache->load_file(opts.data + "/qft64_eps1e-10.cache");
  CompilerOptions co;
  co.approximation = {.epsilon = 1e-10, .cache = cache, .cache_only = true};
  std::vector<double> xs, ys;
  std::string counts;
  for (std::uint64_t n : {8, 16, 32, 64}) {
    std::istringstream in(generate_qft(n));
    std::ostringstream out;
    const CompileStats st = compile_stream(in, out, co);
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(static_cast<double>(st.lli)));
    counts += fmt("%s%llu:%llu", counts.empty() ? "" : " ", static_cast<unsigned long long>(n),
                  static_cast<unsigned long long>(st.lli));
  }
  const double mx = (xs[0] + xs[1] + xs[2] + xs[3]) / 4, my = (ys[0] + ys[1] + ys[2] + ys[3]) / 4;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 4; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double alpha = sxy / sxx;
  return {std::abs(alpha - 2.0) <= 0.3,
          fmt("LLI counts n:count %s at eps 1e-10, alpha = %.3f (bar 2.0 +- 0.3)",
              counts.c_str(), alpha)};
}

Result c12_resources() {
  const ResourceReport r = min_distance({.physical_error_rate = 1e-3, .cells = 1000,
                                         .slices = 1000, .success = 0.99});
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> logp(-6, -2.05), logv(0, 12), succ(0.5, 0.9999);
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    const double p = std::pow(10.0, logp(rng));
    const auto cells = static_cast<std::uint64_t>(1 + rng() % 4096);
    const auto slices = static_cast<std::uint64_t>(std::pow(10.0, logv(rng))) / cells + 1;
    const double s = succ(rng);
    const ResourceReport q =
        min_distance({.physical_error_rate = p, .cells = cells, .slices = slices, .success = s});
    const long double volume = static_cast<long double>(cells) * slices;
    auto fails = [&](int d) {
      const long double pl = 0.1L * std::pow(static_cast<long double>(p) / 0.01L, (d + 1) / 2);
      return volume * pl > (1.0L - s) * (1 + 1e-12L);
    };
    bad += q.distance % 2 != 1 || fails(q.distance) || (q.distance > 1 && !fails(q.distance - 2));
  }
  return {r.distance == 13 && bad == 0,
          fmt("worked example d = %d (want 13); %d of 100 random queries not minimal",
              r.distance, bad)};
}

Result c13_pipeline() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string cmd =
      "set -o pipefail 2>/dev/null; " + quote(opts.cli) + " qft 8 --lli -e 1e-10 --cache " +
      quote(opts.data + "/qft64_eps1e-10.cache") + " --cache-only | " + quote(opts.cli) +
      " slice -l " + quote(opts.layouts + "/12by12.txt") + " | " + quote(opts.python) + " " +
      quote(opts.validator) + " --schema " + quote(opts.schema);
  int status = 0;
  const std::string out = shell("bash -c " + quote(cmd), &status);
  const double dt = seconds_since(t0);
  std::string line = out.substr(0, out.find('\n'));
  const bool valid = status == 0 && line.find("\"valid\": true") != std::string::npos;
  return {valid && dt < 60, fmt("qft 8 | slice 12by12 | schema check in %.1f s: %s", dt,
                                line.empty() ? "no output" : line.c_str())};
}

}  // namespace

int main(int argc, char **argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    auto value = [&]() -> std::string {
      if (i + 1 >= argc) {
        std::cerr << "missing value for " << a << "\n";
        std::exit(2);
      }
      return argv[++i];
    };
    if (a == "--stream-child") return stream_child(std::stoull(value()));
    if (a == "--cli") opts.cli = value();
    else if (a == "--python") opts.python = value();
    else if (a == "--schema") opts.schema = value();
    else if (a == "--validator") opts.validator = value();
    else if (a == "--layouts") opts.layouts = value();
    else if (a == "--data") opts.data = value();
    else if (a == "--report") opts.report = value();
    else if (a == "--expect-fail") opts.expect_fail = parse_set(value());
    else if (a == "--only") opts.only = parse_set(value());
    else {
      std::cerr << "unknown argument " << a << "\n";
      return 2;
    }
  }

  const std::pair<const char *, Result (*)()> criteria[] = {
      {"compression worked example", c1_compression_example},
      {"controlled rotation decomposition", c2_controlled_rotation},
      {"Litinski transform soundness", c3_litinski},
      {"lowering templates in every branch", c4_lowering},
      {"lazy vs dense simulation", c5_ltsvs},
      {"compression ratio", c6_compression_ratio},
      {"layout goldens", c7_layouts},
      {"routing optimality and determinism", c8_routing},
      {"streaming memory", c9_memory},
      {"slicer throughput", c10_throughput},
      {"QFT scaling", c11_qft_scaling},
      {"resource estimator", c12_resources},
      {"end-to-end pipeline", c13_pipeline},
  };

  std::set<int> failed;
  std::ostringstream report;
  for (int k = 1; k <= 13; ++k) {
    if (!opts.only.empty() && !opts.only.count(k)) continue;
    const auto &[name, fn] = criteria[k - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = fn();
    } catch (const std::exception &e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    if (!r.pass) failed.insert(k);
    const std::string line = fmt("%s %2d %s: %s (%.1f s)", r.pass ? "PASS" : "FAIL", k, name,
                                 r.detail.c_str(), seconds_since(t0));
    std::cout << line << std::endl;
    report << line << "\n";
  }

  std::set<int> expected;
  for (int k : opts.expect_fail) {
    if (opts.only.empty() || opts.only.count(k)) expected.insert(k);
  }
  const bool ok = failed == expected;
  std::string summary = fmt("%zu failed", failed.size());
  if (!expected.empty()) {
    summary += ok ? ", as expected" : ", expected failures differ";
  }
  std::cout << summary << std::endl;
  report << summary << "\n";
  if (!opts.report.empty()) {
    std::ofstream(opts.report) << report.str();
  }
  return ok ? 0 : 1;
}
