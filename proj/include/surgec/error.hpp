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

#include <stdexcept>
#include <string>

namespace surgec {

enum class ErrorKind {
  Parse,
  UnsupportedGate,
  InvalidArgument,
  NoApproximationFound,
  MissingCacheEntry,
  UnsupportedBlock,
  MidCircuitMeasurement,
  Layout,
  UnknownPatch,
  NoRoute,
  Deadlock,
  DeadPatch,
  BudgetExceeded,
  Threshold,
  Io,
  Internal,
};

const char *to_string(ErrorKind kind);

// Every failure raised by the library. Internal marks a broken invariant
// (a bug), all other kinds are caused by the input.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  bool is_internal() const { return kind_ == ErrorKind::Internal; }

 private:
  ErrorKind kind_;
};

// Parse failures carry the 1-based line and the offending token.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string token, const std::string &message);

  std::size_t line() const { return line_; }
  const std::string &token() const { return token_; }

 private:
  std::size_t line_;
  std::string token_;
};

}  // namespace surgec
