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

#include "surgec/slice_json.hpp"

#include <sstream>

namespace surgec {

const char *to_string(ActivityKind k) {
  switch (k) {
    case ActivityKind::Free: return "free";
    case ActivityKind::Qubit: return "qubit";
    case ActivityKind::Ancilla: return "ancilla";
    case ActivityKind::Route: return "route";
    case ActivityKind::Busy: return "busy";
    case ActivityKind::Distillation: return "distillation";
    case ActivityKind::MagicQueued: return "magic_queued";
  }
  return "free";
}

const char *to_string(Orientation o) {
  return o == Orientation::Default ? "default" : "rotated";
}

namespace {

void write_cell(std::ostream &out, const CellActivity &a) {
  if (a.kind == ActivityKind::Free) {
    out << "null";
    return;
  }
  out << "{\"kind\":\"" << to_string(a.kind) << '"';
  switch (a.kind) {
    case ActivityKind::Qubit:
    case ActivityKind::Ancilla:
      out << ",\"patch\":" << a.patch << ",\"orientation\":\""
          << to_string(a.orientation) << '"';
      if (a.state) out << ",\"state\":\"" << a.state << '"';
      break;
    case ActivityKind::Distillation:
      out << ",\"region\":" << a.region << ",\"countdown\":" << a.countdown;
      break;
    case ActivityKind::MagicQueued:
      out << ",\"region\":" << a.region << ",\"orientation\":\""
          << to_string(a.orientation) << '"';
      break;
    default:
      break;
  }
  if (a.seq >= 0) {
    out << ",\"activity\":{\"seq\":" << a.seq << ",\"op\":\"" << (a.op ? a.op : "")
        << "\"}";
  }
  out << '}';
}

}  // namespace

void write_slice_json(std::ostream &out, const Slice &slice) {
  out << '[';
  for (int r = 0; r < slice.rows; ++r) {
    if (r) out << ',';
    out << '[';
    for (int c = 0; c < slice.cols; ++c) {
      if (c) out << ',';
      if (slice.cells.empty()) {
        out << "null";
      } else {
        write_cell(out, slice.at(r, c));
      }
    }
    out << ']';
  }
  out << ']';
}

std::string slice_to_json(const Slice &slice) {
  std::ostringstream ss;
  write_slice_json(ss, slice);
  return ss.str();
}

SliceJsonWriter::SliceJsonWriter(std::ostream &out, SliceFormat format)
    : out_(out), format_(format) {
  if (format_ == SliceFormat::Array) out_ << '[';
}

SliceJsonWriter::~SliceJsonWriter() {
  try {
    close();
  } catch (...) {
  }
}

void SliceJsonWriter::write(const Slice &slice) {
  if (format_ == SliceFormat::Array) {
    out_ << (first_ ? "\n" : ",\n");
    write_slice_json(out_, slice);
  } else {
    write_slice_json(out_, slice);
    out_ << '\n';
  }
  first_ = false;
}

void SliceJsonWriter::close() {
  if (closed_) return;
  closed_ = true;
  if (format_ == SliceFormat::Array) out_ << (first_ ? "]\n" : "\n]\n");
  out_.flush();
}

namespace {
void write_histogram(std::ostream &out,
                     const std::map<std::uint64_t, std::uint64_t> &h) {
  out << '{';
  bool first = true;
  for (const auto &[k, v] : h) {
    if (!first) out << ',';
    first = false;
    out << '"' << k << "\":" << v;
  }
  out << '}';
}
}  // namespace

std::string RunStats::to_json() const {
  std::ostringstream out;
  out << "{\"slices\":" << slices << ",\"lli\":" << lli << ",\"stalls\":" << stalls
      << ",\"routes\":" << routes << ",\"route_cache_hits\":" << route_cache_hits
      << ",\"magic_states_consumed\":" << magic_states_consumed
      << ",\"magic_states_produced\":" << magic_states_produced
      << ",\"magic_states_discarded\":" << magic_states_discarded
      << ",\"max_magic_queue\":" << max_magic_queue << ",\"rows\":" << rows
      << ",\"cols\":" << cols << ",\"cells\":" << cells
      << ",\"peak_resident_slices\":" << peak_resident_slices
      << ",\"routing_occupancy\":";
  write_histogram(out, routing_occupancy);
  out << ",\"magic_queue\":";
  write_histogram(out, magic_queue);
  out << '}';
  return out.str();
}

}  // namespace surgec
