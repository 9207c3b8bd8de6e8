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

#include <ostream>
#include <string>

#include "surgec/slicer.hpp"

namespace surgec {

const char *to_string(ActivityKind k);
const char *to_string(Orientation o);

/// One slice as a JSON array of rows of cells (no trailing newline). Free
/// cells are null, so `jq '.[][][]'` over the array form yields every cell.
/// The shape is described by schema/slice.schema.json.
void write_slice_json(std::ostream &out, const Slice &slice);
std::string slice_to_json(const Slice &slice);

enum class SliceFormat {
  Array,   // a single JSON array, streamed element by element
  Ndjson,  // one slice per line
};

/// Streams slices without buffering them. close() terminates the array form;
/// the destructor calls it if needed.
class SliceJsonWriter {
 public:
  SliceJsonWriter(std::ostream &out, SliceFormat format);
  ~SliceJsonWriter();
  SliceJsonWriter(const SliceJsonWriter &) = delete;
  SliceJsonWriter &operator=(const SliceJsonWriter &) = delete;

  void write(const Slice &slice);
  void close();

 private:
  std::ostream &out_;
  SliceFormat format_;
  bool first_ = true;
  bool closed_ = false;
};

}  // namespace surgec
