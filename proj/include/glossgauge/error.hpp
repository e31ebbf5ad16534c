// Copyright 2026 The GlossGauge Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GLOSSGAUGE_ERROR_HPP_
#define GLOSSGAUGE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace glossgauge {

// Exit codes used by the CLI. Each error class maps to exactly one.
enum class ExitCode : int { kOk = 0, kUsage = 1, kBackend = 2, kData = 3 };

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept = 0;
};

// Bad flags, bad config values, violated preconditions on caller input.
class UsageError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kUsage; }
};

// Transport failures, non-success statuses, malformed backend replies.
class BackendError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kBackend; }
};

// Malformed input files, invariant violations in glossary or scores.
class DataError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kData; }
};

class UnresolvedReferenceError : public DataError {
 public:
  UnresolvedReferenceError(std::string from, std::string to)
      : DataError("unresolved cross-reference: \"" + from + "\" cites \"" + to +
                  "\", which is not in the glossary"),
        from_term(std::move(from)),
        cited_term(std::move(to)) {}
  std::string from_term;
  std::string cited_term;
};

class CycleError : public DataError {
 public:
  explicit CycleError(std::vector<std::string> terms)
      : DataError("cross-reference cycle: " + join(terms)), cycle(std::move(terms)) {}
  std::vector<std::string> cycle;

 private:
  static std::string join(const std::vector<std::string>& terms) {
    std::string out;
    for (const auto& t : terms) {
      if (!out.empty()) out += " -> ";
      out += t;
    }
    return out;
  }
};

}  // namespace glossgauge

#endif  // GLOSSGAUGE_ERROR_HPP_
