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

#include "surgec/surgec.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <memory>
#include <new>
#include <ostream>
#include <sstream>
#include <streambuf>
#include <string>

#include <json.hpp>

#include "surgec/compiler.hpp"
#include "surgec/error.hpp"
#include "surgec/layout.hpp"
#include "surgec/qasm.hpp"
#include "surgec/resources.hpp"
#include "surgec/slice_json.hpp"
#include "surgec/slicer.hpp"
#include "surgec/verify.hpp"

struct surgec_layout {
  surgec::Layout layout;
};

namespace {

using surgec::Error;
using surgec::ErrorKind;

thread_local std::string g_last_error;

// Buffered std::streambuf over a stdio stream.
class FileBuf : public std::streambuf {
 public:
  explicit FileBuf(FILE *f) : f_(f) {
    setg(in_, in_, in_);
    setp(out_, out_ + sizeof out_);
  }
  ~FileBuf() override { sync(); }

 protected:
  int_type underflow() override {
    const std::size_t n = std::fread(in_, 1, sizeof in_, f_);
    if (n == 0) return traits_type::eof();
    setg(in_, in_, in_ + n);
    return traits_type::to_int_type(in_[0]);
  }
  int_type overflow(int_type ch) override {
    if (flush_out() != 0) return traits_type::eof();
    if (!traits_type::eq_int_type(ch, traits_type::eof())) {
      *pptr() = traits_type::to_char_type(ch);
      pbump(1);
    }
    return traits_type::not_eof(ch);
  }
  int sync() override {
    if (flush_out() != 0) return -1;
    return std::fflush(f_) == 0 ? 0 : -1;
  }

 private:
  int flush_out() {
    const std::size_t n = static_cast<std::size_t>(pptr() - pbase());
    if (n && std::fwrite(pbase(), 1, n, f_) != n) return -1;
    setp(out_, out_ + sizeof out_);
    return 0;
  }

  FILE *f_;
  char in_[1 << 16];
  char out_[1 << 16];
};

surgec_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return SURGEC_ERR_PARSE;
    case ErrorKind::UnsupportedGate: return SURGEC_ERR_UNSUPPORTED_GATE;
    case ErrorKind::InvalidArgument: return SURGEC_ERR_INVALID_ARGUMENT;
    case ErrorKind::NoApproximationFound: return SURGEC_ERR_NO_APPROXIMATION;
    case ErrorKind::MissingCacheEntry: return SURGEC_ERR_MISSING_CACHE_ENTRY;
    case ErrorKind::UnsupportedBlock: return SURGEC_ERR_UNSUPPORTED_BLOCK;
    case ErrorKind::MidCircuitMeasurement: return SURGEC_ERR_MID_CIRCUIT_MEASUREMENT;
    case ErrorKind::Layout: return SURGEC_ERR_LAYOUT;
    case ErrorKind::UnknownPatch: return SURGEC_ERR_UNKNOWN_PATCH;
    case ErrorKind::NoRoute: return SURGEC_ERR_NO_ROUTE;
    case ErrorKind::Deadlock: return SURGEC_ERR_DEADLOCK;
    case ErrorKind::DeadPatch: return SURGEC_ERR_DEAD_PATCH;
    case ErrorKind::BudgetExceeded: return SURGEC_ERR_BUDGET_EXCEEDED;
    case ErrorKind::Threshold: return SURGEC_ERR_THRESHOLD;
    case ErrorKind::Io: return SURGEC_ERR_IO;
    case ErrorKind::Internal: return SURGEC_ERR_INTERNAL;
  }
  return SURGEC_ERR_INTERNAL;
}

template <typename F>
surgec_status guarded(F &&f) {
  g_last_error.clear();
  try {
    f();
    return SURGEC_OK;
  } catch (const Error &e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc &) {
    g_last_error = "out of memory";
    return SURGEC_ERR_INTERNAL;
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return SURGEC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return SURGEC_ERR_INTERNAL;
  }
}

void require(const void *p, const char *what) {
  if (!p) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must not be NULL");
}

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

surgec::CompilerOptions to_options(const surgec_compile_options *o) {
  surgec_compile_options def;
  surgec_compile_options_init(&def);
  if (!o) o = &def;
  surgec::CompilerOptions opt;
  opt.mode = o->mode == SURGEC_MODE_COMPRESSED ? surgec::LoweringMode::Compressed
                                               : surgec::LoweringMode::Direct;
  opt.litinski = o->litinski != 0;
  opt.peephole = o->peephole != 0;
  opt.lowering.boundary_rotate = o->boundary_rotate != 0;
  if (!(o->epsilon > 0) || !(o->epsilon < 1)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
  }
  opt.approximation.epsilon = o->epsilon;
  opt.approximation.cache_only = o->cache_only != 0;
  if (o->cache_only && !o->cache_path) {
    throw Error(ErrorKind::InvalidArgument, "cache-only approximation needs a cache file");
  }
  if (o->cache_path) {
    auto cache = std::make_shared<surgec::ApproximationCache>();
    cache->load_file(o->cache_path);
    opt.approximation.cache = std::move(cache);
  }
  return opt;
}

surgec::QasmOptions to_qasm(const surgec_compile_options *o) {
  surgec::QasmOptions q;
  if (o) q.target_first_cx = o->target_first_cx != 0;
  return q;
}

void fill(surgec_compile_stats *out, const surgec::CompileStats &s) {
  if (!out) return;
  out->qubits = s.qubits;
  out->gates_in = s.gates_in;
  out->gates_after_peephole = s.gates_after_peephole;
  out->approximated_rotations = s.approximated_rotations;
  out->lli = s.lli;
  out->magic_states = s.magic_states;
  out->conditionals = s.conditionals;
  out->patches = s.patches;
}

surgec::ErrorModel to_model(const surgec_error_model *m) {
  surgec::ErrorModel model;
  if (m) {
    model.prefactor = m->prefactor;
    model.threshold = m->threshold;
    model.qubits_per_patch_factor = m->qubits_per_patch_factor;
  }
  return model;
}

void fill(surgec_resource_report *out, const surgec::ResourceReport &r) {
  out->distance = r.distance;
  out->qubits_per_patch = r.qubits_per_patch;
  out->total_qubits = r.total_qubits;
  out->volume = r.volume;
  out->failure_bound = r.failure_bound;
}

void check_output(std::ostream &out) {
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write error");
}

}  // namespace

extern "C" {

const char *surgec_version(void) { return SURGEC_VERSION; }

const char *surgec_build_info(void) {
  static const std::string info = std::string("surgec ") + SURGEC_VERSION + " (git " +
                                  SURGEC_GIT_REV + ", " +
#if defined(__clang__)
                                  "clang " __clang_version__
#elif defined(__GNUC__)
                                  "gcc " __VERSION__
#else
                                  "unknown compiler"
#endif
                                  + ")";
  return info.c_str();
}

const char *surgec_status_name(surgec_status status) {
  switch (status) {
    case SURGEC_OK: return "ok";
    case SURGEC_ERR_PARSE: return "parse error";
    case SURGEC_ERR_UNSUPPORTED_GATE: return "unsupported gate";
    case SURGEC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SURGEC_ERR_NO_APPROXIMATION: return "no approximation found";
    case SURGEC_ERR_MISSING_CACHE_ENTRY: return "missing cache entry";
    case SURGEC_ERR_UNSUPPORTED_BLOCK: return "unsupported block";
    case SURGEC_ERR_MID_CIRCUIT_MEASUREMENT: return "mid-circuit measurement";
    case SURGEC_ERR_LAYOUT: return "layout error";
    case SURGEC_ERR_UNKNOWN_PATCH: return "unknown patch";
    case SURGEC_ERR_NO_ROUTE: return "no route";
    case SURGEC_ERR_DEADLOCK: return "deadlock";
    case SURGEC_ERR_DEAD_PATCH: return "dead patch";
    case SURGEC_ERR_BUDGET_EXCEEDED: return "budget exceeded";
    case SURGEC_ERR_THRESHOLD: return "above threshold";
    case SURGEC_ERR_IO: return "i/o error";
    case SURGEC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char *surgec_last_error(void) { return g_last_error.c_str(); }

int surgec_status_is_input_error(surgec_status status) {
  return status != SURGEC_OK && status != SURGEC_ERR_INTERNAL;
}

void surgec_string_free(char *s) { std::free(s); }

void surgec_compile_options_init(surgec_compile_options *o) {
  if (!o) return;
  o->mode = SURGEC_MODE_DIRECT;
  o->litinski = 0;
  o->peephole = 1;
  o->boundary_rotate = 1;
  o->epsilon = 1e-3;
  o->cache_path = nullptr;
  o->cache_only = 0;
  o->target_first_cx = 0;
}

surgec_status surgec_compile(const surgec_compile_options *options, FILE *in, FILE *out,
                             surgec_compile_stats *stats) {
  return guarded([&] {
    require(in, "input stream");
    require(out, "output stream");
    const auto opt = to_options(options);
    FileBuf ib(in), ob(out);
    std::istream is(&ib);
    std::ostream os(&ob);
    fill(stats, surgec::compile_stream(is, os, opt, to_qasm(options)));
    check_output(os);
  });
}

surgec_status surgec_qft_qasm(uint64_t n, FILE *out) {
  return guarded([&] {
    require(out, "output stream");
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "QFT needs at least one qubit");
    FileBuf ob(out);
    std::ostream os(&ob);
    surgec::write_qft(os, n);
    check_output(os);
  });
}

surgec_status surgec_qft_lli(uint64_t n, const surgec_compile_options *options, FILE *out,
                             surgec_compile_stats *stats) {
  return guarded([&] {
    require(out, "output stream");
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "QFT needs at least one qubit");
    const auto opt = to_options(options);
    std::stringstream qasm;
    surgec::write_qft(qasm, n);
    FileBuf ob(out);
    std::ostream os(&ob);
    fill(stats, surgec::compile_stream(qasm, os, opt));
    check_output(os);
  });
}

surgec_status surgec_layout_load(const char *path, surgec_layout **out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new surgec_layout{surgec::load_layout(path)};
  });
}

surgec_status surgec_layout_parse(const char *text, surgec_layout **out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new surgec_layout{surgec::parse_layout(text)};
  });
}

void surgec_layout_free(surgec_layout *layout) { delete layout; }

int surgec_layout_rows(const surgec_layout *l) { return l ? l->layout.rows() : 0; }
int surgec_layout_cols(const surgec_layout *l) { return l ? l->layout.cols() : 0; }

size_t surgec_layout_qubits(const surgec_layout *l) {
  return l ? l->layout.count(surgec::CellKind::Qubit) : 0;
}
size_t surgec_layout_routing_cells(const surgec_layout *l) {
  return l ? l->layout.count(surgec::CellKind::Routing) : 0;
}
size_t surgec_layout_ancilla_cells(const surgec_layout *l) {
  return l ? l->layout.count(surgec::CellKind::Ancilla) : 0;
}
size_t surgec_layout_regions(const surgec_layout *l) {
  return l ? l->layout.regions().size() : 0;
}
size_t surgec_layout_warning_count(const surgec_layout *l) {
  return l ? l->layout.warnings().size() : 0;
}
const char *surgec_layout_warning(const surgec_layout *l, size_t i) {
  if (!l || i >= l->layout.warnings().size()) return nullptr;
  return l->layout.warnings()[i].c_str();
}

void surgec_slice_options_init(surgec_slice_options *o) {
  if (!o) return;
  o->distill_period = 6;
  o->route_cache = 1;
  o->instant_magic = 0;
  o->format = SURGEC_SLICES_JSON;
}

surgec_status surgec_slice(const surgec_layout *layout, const surgec_slice_options *options,
                           FILE *in, FILE *out, char **stats_json) {
  return guarded([&] {
    require(layout, "layout");
    require(in, "input stream");
    surgec_slice_options def;
    surgec_slice_options_init(&def);
    if (!options) options = &def;
    if (options->format != SURGEC_SLICES_NONE) require(out, "output stream");
    surgec::SlicerConfig config;
    config.distill_period = options->distill_period;
    config.route_cache = options->route_cache != 0;
    config.instant_magic = options->instant_magic != 0;
    config.render = options->format != SURGEC_SLICES_NONE;

    FileBuf ib(in);
    std::istream is(&ib);
    surgec::LliReader reader(is);
    std::unique_ptr<FileBuf> ob;
    std::unique_ptr<std::ostream> os;
    std::unique_ptr<surgec::SliceJsonWriter> writer;
    if (options->format != SURGEC_SLICES_NONE) {
      ob = std::make_unique<FileBuf>(out);
      os = std::make_unique<std::ostream>(ob.get());
      writer = std::make_unique<surgec::SliceJsonWriter>(
          *os, options->format == SURGEC_SLICES_NDJSON ? surgec::SliceFormat::Ndjson
                                                       : surgec::SliceFormat::Array);
    }
    surgec::SliceVisitor visit;
    if (writer) {
      visit = [&](const surgec::Slice &s) {
        writer->write(s);
        if (!*os) throw Error(ErrorKind::Io, "write error on slice output");
      };
    }
    const surgec::RunStats stats =
        surgec::run_stream([&] { return reader.next(); }, layout->layout, visit, config);
    if (writer) {
      writer->close();
      check_output(*os);
    }
    if (stats_json) *stats_json = dup_string(stats.to_json());
  });
}

surgec_status surgec_verify(const char *qasm_path, const char *lli_path,
                            const surgec_compile_options *options, uint64_t seed,
                            size_t max_amplitudes, surgec_verify_result *result,
                            char **summary) {
  return guarded([&] {
    require(qasm_path, "circuit path");
    require(result, "result");
    std::ifstream qf(qasm_path);
    if (!qf) throw Error(ErrorKind::Io, std::string("cannot open '") + qasm_path + "'");
    std::stringstream text;
    text << qf.rdbuf();
    const surgec::Circuit circuit = surgec::parse_program(text.str(), to_qasm(options));
    surgec::VerifyOptions vo;
    vo.compiler = to_options(options);
    vo.seed = seed;
    if (max_amplitudes) vo.ltsvs.max_amplitudes = max_amplitudes;
    surgec::VerifyReport report;
    if (lli_path) {
      std::ifstream lf(lli_path);
      if (!lf) throw Error(ErrorKind::Io, std::string("cannot open '") + lli_path + "'");
      surgec::LliReader reader(lf);
      std::vector<surgec::Instruction> stream;
      while (auto i = reader.next()) stream.push_back(std::move(*i));
      // The number of approximated rotations bounds the tolerance; take it
      // from a fresh compile of the circuit.
      surgec::CompileStats stats;
      surgec::compile_circuit(circuit, vo.compiler, &stats);
      report = surgec::verify_stream(circuit, stream, stats.approximated_rotations, vo);
    } else {
      report = surgec::verify_circuit(circuit, vo);
    }
    result->pass = report.pass;
    result->trace_distance = report.trace_distance;
    result->tolerance = report.tolerance;
    result->branches = report.branches;
    result->exhaustive = report.exhaustive;
    result->lli = report.lli;
    result->approximated_rotations = report.approximated_rotations;
    if (summary) *summary = dup_string(surgec::to_string(report));
  });
}

surgec_status surgec_snapshots(FILE *in, const surgec_layout *layout, uint64_t data_patches,
                               uint64_t seed, int amplitudes, size_t max_amplitudes,
                               FILE *out) {
  return guarded([&] {
    require(in, "input stream");
    require(out, "output stream");
    FileBuf ib(in), ob(out);
    std::istream is(&ib);
    std::ostream os(&ob);
    surgec::LliReader reader(is);
    surgec::SnapshotPolicy policy;
    policy.amplitudes = amplitudes != 0;
    if (layout) {
      policy.when = surgec::SnapshotWhen::EverySlice;
      policy.layout = &layout->layout;
    }
    surgec::LtsvsConfig config;
    config.implicit_patches = static_cast<surgec::PatchId>(data_patches);
    if (max_amplitudes) config.max_amplitudes = max_amplitudes;
    surgec::verified_run(
        [&] { return reader.next(); }, seed, policy,
        [&](const surgec::Snapshot &s) { os << surgec::snapshot_to_json(s) << '\n'; },
        config);
    check_output(os);
  });
}

void surgec_error_model_init(surgec_error_model *m) {
  if (!m) return;
  const surgec::ErrorModel def;
  m->prefactor = def.prefactor;
  m->threshold = def.threshold;
  m->qubits_per_patch_factor = def.qubits_per_patch_factor;
}

surgec_status surgec_logical_error_rate(double p, int d, const surgec_error_model *model,
                                        double *rate) {
  return guarded([&] {
    require(rate, "rate");
    *rate = surgec::logical_error_rate(p, d, to_model(model));
  });
}

surgec_status surgec_min_distance(double p, uint64_t cells, uint64_t slices, double success,
                                  const surgec_error_model *model,
                                  surgec_resource_report *report) {
  return guarded([&] {
    require(report, "report");
    surgec::ResourceQuery q;
    q.physical_error_rate = p;
    q.cells = cells;
    q.slices = slices;
    q.success = success;
    fill(report, surgec::min_distance(q, to_model(model)));
  });
}

surgec_status surgec_estimate_json(const char *stats_json, double p, double success,
                                   const surgec_error_model *model,
                                   surgec_resource_report *report) {
  return guarded([&] {
    require(stats_json, "statistics");
    require(report, "report");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(stats_json);
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorKind::Parse, std::string("run statistics: ") + e.what());
    }
    if (!j.is_object() || !j.contains("cells") || !j.contains("slices") ||
        !j["cells"].is_number_unsigned() || !j["slices"].is_number_unsigned()) {
      throw Error(ErrorKind::Parse,
                  "run statistics must be an object with unsigned 'cells' and 'slices'");
    }
    surgec::ResourceQuery q;
    q.physical_error_rate = p;
    q.success = success;
    q.cells = j["cells"].get<std::uint64_t>();
    q.slices = j["slices"].get<std::uint64_t>();
    fill(report, surgec::min_distance(q, to_model(model)));
  });
}

surgec_status surgec_sweep(const uint64_t *widths, size_t n_widths, const uint64_t *depths,
                           size_t n_depths, double p, double success, uint64_t seed,
                           const surgec_compile_options *options,
                           const surgec_error_model *model, FILE *out) {
  return guarded([&] {
    require(out, "output stream");
    if (!widths || !depths || !n_widths || !n_depths) {
      throw Error(ErrorKind::InvalidArgument, "sweep ranges must not be empty");
    }
    surgec::SweepConfig config;
    config.widths.assign(widths, widths + n_widths);
    config.depths.assign(depths, depths + n_depths);
    config.physical_error_rate = p;
    config.success = success;
    config.seed = seed;
    config.compiler = to_options(options);
    config.model = to_model(model);
    // Validate the model once so a bad rate fails the call, not every point.
    surgec::logical_error_rate(p, 1, config.model);
    if (!(success > 0) || !(success < 1)) {
      throw Error(ErrorKind::InvalidArgument, "success probability must lie in (0, 1)");
    }
    FileBuf ob(out);
    std::ostream os(&ob);
    surgec::write_sweep_csv_header(os);
    surgec::sweep(config, [&](const surgec::SweepPoint &pt) {
      surgec::write_sweep_csv_row(os, pt);
      os.flush();
    });
    check_output(os);
  });
}

}  // extern "C"
