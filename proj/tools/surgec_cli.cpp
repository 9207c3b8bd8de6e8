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

// surgec: compile OpenQASM to lattice-surgery instructions, schedule them on
// a layout, verify and estimate resources. Data goes to stdout, diagnostics to
// stderr. Exit status: 0 success, 1 bad input (or a failed verification),
// 2 internal error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "surgec/surgec.h"

namespace {

constexpr const char *kLayoutDirEnv = "SURGEC_LAYOUT_DIR";

int exit_code(surgec_status s) {
  if (s == SURGEC_OK) return 0;
  return surgec_status_is_input_error(s) ? 1 : 2;
}

int report(const std::string &cmd, surgec_status s) {
  if (s != SURGEC_OK) {
    std::cerr << "surgec " << cmd << ": " << surgec_status_name(s) << ": "
              << surgec_last_error() << '\n';
  }
  return exit_code(s);
}

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closes owned streams; stdin and stdout are left alone.
class Stream {
 public:
  Stream(const std::string &path, bool write) {
    if (path.empty() || path == "-") {
      f_ = write ? stdout : stdin;
      return;
    }
    f_ = std::fopen(path.c_str(), write ? "wb" : "rb");
    if (!f_) throw InputError("cannot open '" + path + "'");
    owned_ = true;
  }
  ~Stream() {
    if (owned_) std::fclose(f_);
  }
  Stream(const Stream &) = delete;
  Stream &operator=(const Stream &) = delete;
  FILE *get() const { return f_; }

 private:
  FILE *f_ = nullptr;
  bool owned_ = false;
};

struct CompileFlags {
  double epsilon = 1e-3;
  std::string cache;
  bool cache_only = false;
  std::string mode = "direct";
  bool litinski = false;
  bool no_peephole = false;
  bool no_rotate = false;
  bool target_first_cx = false;

  void add(CLI::App *app) {
    app->add_option("-e,--epsilon", epsilon, "approximation precision")
        ->check(CLI::Range(1e-300, 0.5));
    app->add_option("--cache", cache, "approximation cache file");
    app->add_flag("--cache-only", cache_only, "fail instead of searching on a cache miss");
    app->add_option("-m,--mode", mode, "lowering of rotation sequences")
        ->check(CLI::IsMember({"direct", "compressed"}));
    app->add_flag("--litinski", litinski,
                  "measure all qubits at the end and eliminate Cliffords");
    app->add_flag("--no-peephole", no_peephole, "keep dead and cancelling gates");
    app->add_flag("--no-rotate", no_rotate, "omit ROT after transversal H");
    app->add_flag("--target-first-cx", target_first_cx,
                  "read `cx a,b` with the target first");
  }

  surgec_compile_options options() const {
    surgec_compile_options o;
    surgec_compile_options_init(&o);
    o.epsilon = epsilon;
    o.cache_path = cache.empty() ? nullptr : cache.c_str();
    o.cache_only = cache_only;
    o.mode = mode == "compressed" ? SURGEC_MODE_COMPRESSED : SURGEC_MODE_DIRECT;
    o.litinski = litinski;
    o.peephole = !no_peephole;
    o.boundary_rotate = !no_rotate;
    o.target_first_cx = target_first_cx;
    return o;
  }
};

void print_compile_stats(const surgec_compile_stats &s) {
  std::cerr << "qubits=" << s.qubits << " gates=" << s.gates_in
            << " after_peephole=" << s.gates_after_peephole
            << " approximated=" << s.approximated_rotations << " lli=" << s.lli
            << " magic=" << s.magic_states << " conditionals=" << s.conditionals
            << " patches=" << s.patches << '\n';
}

// A layout path as given, else relative to $SURGEC_LAYOUT_DIR.
std::string resolve_layout(const std::string &path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  if (const char *dir = std::getenv(kLayoutDirEnv); dir && fs::path(path).is_relative()) {
    for (const fs::path &cand : {fs::path(dir) / path, fs::path(dir) / (path + ".txt")}) {
      if (fs::exists(cand)) return cand.string();
    }
  }
  return path;
}

// "a,b,c" or "first:last[:step]".
std::vector<std::uint64_t> parse_range(const std::string &text) {
  std::vector<std::uint64_t> out;
  try {
    if (text.find(':') != std::string::npos) {
      std::vector<std::uint64_t> parts;
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ':')) parts.push_back(std::stoull(item));
      if (parts.size() < 2 || parts.size() > 3) throw InputError("bad range");
      const std::uint64_t step = parts.size() == 3 ? parts[2] : 1;
      if (step == 0 || parts[1] < parts[0]) throw InputError("bad range");
      for (std::uint64_t v = parts[0]; v <= parts[1]; v += step) out.push_back(v);
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    }
  } catch (const std::logic_error &) {
    throw InputError("cannot parse range '" + text + "'");
  }
  if (out.empty()) throw InputError("empty range '" + text + "'");
  return out;
}

std::string read_all(FILE *f) {
  std::string s;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) s.append(buf, n);
  return s;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"surgec: OpenQASM to lattice-surgery compiler, slicer and verifier"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(surgec_build_info()));

  // compile
  auto *compile = app.add_subcommand("compile", "compile OpenQASM to LLI");
  std::string compile_in = "-";
  std::string compile_out = "-";
  bool compile_stats = false;
  CompileFlags compile_flags;
  compile->add_option("input", compile_in, "OpenQASM file, - for stdin");
  compile->add_option("-o,--output", compile_out, "LLI output, - for stdout");
  compile->add_flag("--stats", compile_stats, "print statistics to stderr");
  compile_flags.add(compile);

  // slice
  auto *slice = app.add_subcommand("slice", "schedule LLI on a layout, emit JSON slices");
  std::string slice_in = "-";
  std::string slice_out = "-";
  std::string layout_path;
  std::string slice_format = "json";
  int distill_period = 6;
  bool no_route_cache = false;
  bool instant_magic = false;
  slice->add_option("input", slice_in, "LLI file, - for stdin");
  slice->add_option("-o,--output", slice_out, "output, - for stdout");
  slice->add_option("-l,--layout", layout_path,
                    std::string("layout file (also looked up in $") + kLayoutDirEnv + ")")
      ->required();
  bool ndjson = false;
  slice->add_option("-f,--format", slice_format,
                    "json (one array of slices), ndjson, stats (statistics only) or none")
      ->check(CLI::IsMember({"json", "ndjson", "stats", "none"}));
  slice->add_flag("--ndjson", ndjson, "one slice per line; same as -f ndjson");
  slice->add_option("--distill-period", distill_period, "slices per magic state")
      ->check(CLI::PositiveNumber);
  slice->add_flag("--no-route-cache", no_route_cache, "always search routes afresh");
  slice->add_flag("--instant-magic", instant_magic,
                  "magic states appear on demand instead of being distilled");

  // qft
  auto *qft = app.add_subcommand("qft", "emit an n-qubit QFT as OpenQASM or LLI");
  std::uint64_t qft_n = 0;
  bool qft_lli = false;
  std::string qft_out = "-";
  CompileFlags qft_flags;
  qft->add_option("n", qft_n, "number of qubits")->required()->check(CLI::PositiveNumber);
  qft->add_flag("--lli", qft_lli, "compile to LLI");
  qft->add_option("-o,--output", qft_out, "output, - for stdout");
  qft_flags.add(qft);

  // verify
  auto *verify = app.add_subcommand(
      "verify", "compile, simulate and compare with a dense simulation of the circuit");
  std::string verify_in;
  std::string verify_lli;
  std::uint64_t seed = 1;
  std::size_t budget = 0;
  std::string snapshots;
  std::string snapshot_layout;
  bool snapshot_amplitudes = false;
  CompileFlags verify_flags;
  verify->add_option("circuit", verify_in, "OpenQASM file")->required();
  verify->add_option("--lli", verify_lli, "check this LLI stream instead of compiling");
  verify->add_option("--seed", seed, "outcome sampling seed");
  verify->add_option("--budget", budget, "largest state vector in amplitudes");
  verify->add_option("--snapshots", snapshots, "write state snapshots (JSON lines)");
  verify->add_option("--snapshot-layout", snapshot_layout,
                     "take snapshots per slice on this layout");
  verify->add_flag("--amplitudes", snapshot_amplitudes, "include amplitudes in snapshots");
  verify_flags.add(verify);

  // estimate
  auto *estimate = app.add_subcommand("estimate", "code distance for slicer statistics");
  std::string estimate_in = "-";
  double p = 1e-3;
  double success = 0.99;
  surgec_error_model model;
  surgec_error_model_init(&model);
  estimate->add_option("input", estimate_in, "statistics JSON from `slice -f stats`");
  estimate->add_option("--p", p, "physical error rate");
  estimate->add_option("--success", success, "target success probability");
  estimate->add_option("--prefactor", model.prefactor, "error model prefactor");
  estimate->add_option("--threshold", model.threshold, "error model threshold");
  estimate->add_option("--qubit-factor", model.qubits_per_patch_factor,
                       "physical qubits per patch, times d^2");

  // sweep
  auto *sweep = app.add_subcommand("sweep", "resource estimates over random H/T/CX circuits");
  std::string widths = "2:4";
  std::string depths = "4:12:4";
  std::string sweep_out = "-";
  std::uint64_t sweep_seed = 1;
  sweep->add_option("--widths", widths, "list a,b,c or range first:last[:step]");
  sweep->add_option("--depths", depths, "list a,b,c or range first:last[:step]");
  sweep->add_option("--p", p, "physical error rate");
  sweep->add_option("--success", success, "target success probability");
  sweep->add_option("--seed", sweep_seed, "circuit generator seed");
  sweep->add_option("-o,--output", sweep_out, "CSV output, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*compile) {
      Stream in(compile_in, false);
      Stream out(compile_out, true);
      const surgec_compile_options o = compile_flags.options();
      surgec_compile_stats stats{};
      const surgec_status s = surgec_compile(&o, in.get(), out.get(), &stats);
      if (s == SURGEC_OK && compile_stats) print_compile_stats(stats);
      return report("compile", s);
    }
    if (*slice) {
      surgec_layout *layout = nullptr;
      surgec_status s = surgec_layout_load(resolve_layout(layout_path).c_str(), &layout);
      if (s != SURGEC_OK) return report("slice", s);
      for (std::size_t i = 0; i < surgec_layout_warning_count(layout); ++i) {
        std::cerr << "surgec slice: warning: " << surgec_layout_warning(layout, i) << '\n';
      }
      surgec_slice_options o;
      surgec_slice_options_init(&o);
      o.distill_period = distill_period;
      o.route_cache = !no_route_cache;
      o.instant_magic = instant_magic;
      if (ndjson && slice_format == "json") slice_format = "ndjson";
      o.format = slice_format == "ndjson" ? SURGEC_SLICES_NDJSON
                 : slice_format == "json" ? SURGEC_SLICES_JSON
                                          : SURGEC_SLICES_NONE;
      Stream in(slice_in, false);
      Stream out(slice_out, true);
      char *stats = nullptr;
      s = surgec_slice(layout, &o, in.get(), out.get(), &stats);
      surgec_layout_free(layout);
      if (s == SURGEC_OK && slice_format == "stats") {
        std::fprintf(out.get(), "%s\n", stats);
        std::fflush(out.get());
      }
      surgec_string_free(stats);
      return report("slice", s);
    }
    if (*qft) {
      Stream out(qft_out, true);
      if (!qft_lli) return report("qft", surgec_qft_qasm(qft_n, out.get()));
      const surgec_compile_options o = qft_flags.options();
      return report("qft", surgec_qft_lli(qft_n, &o, out.get(), nullptr));
    }
    if (*verify) {
      const surgec_compile_options o = verify_flags.options();
      surgec_verify_result result{};
      char *summary = nullptr;
      surgec_status s = surgec_verify(verify_in.c_str(),
                                      verify_lli.empty() ? nullptr : verify_lli.c_str(), &o,
                                      seed, budget, &result, &summary);
      if (s != SURGEC_OK) return report("verify", s);
      std::cout << summary << '\n';
      surgec_string_free(summary);
      if (!snapshots.empty()) {
        // Snapshots replay the stream that was verified.
        FILE *lli = nullptr;
        std::uint64_t qubits = 0;
        {
          Stream circuit(verify_in, false);
          FILE *tmp = std::tmpfile();
          if (!tmp) throw InputError("cannot create a temporary file");
          surgec_compile_stats stats{};
          s = surgec_compile(&o, circuit.get(), tmp, &stats);
          if (s != SURGEC_OK) {
            std::fclose(tmp);
            return report("verify", s);
          }
          qubits = stats.qubits;
          if (verify_lli.empty()) {
            std::rewind(tmp);
            lli = tmp;
          } else {
            std::fclose(tmp);
            lli = std::fopen(verify_lli.c_str(), "rb");
            if (!lli) throw InputError("cannot open '" + verify_lli + "'");
          }
        }
        surgec_layout *layout = nullptr;
        if (!snapshot_layout.empty()) {
          s = surgec_layout_load(resolve_layout(snapshot_layout).c_str(), &layout);
          if (s != SURGEC_OK) {
            std::fclose(lli);
            return report("verify", s);
          }
        }
        Stream out(snapshots, true);
        s = surgec_snapshots(lli, layout, qubits, seed, snapshot_amplitudes, budget,
                             out.get());
        surgec_layout_free(layout);
        std::fclose(lli);
        if (s != SURGEC_OK) return report("verify", s);
      }
      return result.pass ? 0 : 1;
    }
    if (*estimate) {
      Stream in(estimate_in, false);
      const std::string json = read_all(in.get());
      surgec_resource_report r{};
      const surgec_status s = surgec_estimate_json(json.c_str(), p, success, &model, &r);
      if (s != SURGEC_OK) return report("estimate", s);
      std::printf(
          "{\"distance\":%d,\"qubits_per_patch\":%llu,\"total_qubits\":%llu,"
          "\"volume\":%llu,\"failure_bound\":%.6e}\n",
          r.distance, static_cast<unsigned long long>(r.qubits_per_patch),
          static_cast<unsigned long long>(r.total_qubits),
          static_cast<unsigned long long>(r.volume), r.failure_bound);
      return 0;
    }
    if (*sweep) {
      const auto w = parse_range(widths);
      const auto d = parse_range(depths);
      Stream out(sweep_out, true);
      surgec_compile_options o;
      surgec_compile_options_init(&o);
      return report("sweep", surgec_sweep(w.data(), w.size(), d.data(), d.size(), p,
                                          success, sweep_seed, &o, &model, out.get()));
    }
  } catch (const InputError &e) {
    std::cerr << "surgec: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "surgec: internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
