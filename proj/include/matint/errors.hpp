// Copyright 2026 The Authors.
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

#ifndef MATINT_ERRORS_HPP_
#define MATINT_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace matint {

// Caller supplied something outside an operation's contract (bad element id,
// malformed instance, empty batch, ...). Maps to CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Instance or report JSON that does not match the schema. `path` is a JSON
// pointer such as "/m1/inner/k", empty for the document root.
class SchemaError : public InputError {
 public:
  SchemaError(std::string path, const std::string& what)
      : InputError((path.empty() ? "<root>" : path) + ": " + what),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A runtime invariant failed. Always an implementation bug, never a
// recoverable condition.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Phase-2 augmentation found no source-sink path: the two matroids do not
// share a common basis, i.e. the caller violated a precondition.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A fiber in a parallel group exceeded its wall-clock budget without
// submitting a batch or finishing.
class TimeoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown from QueryLedger::submit_batch when a fiber has used up its round
// budget. run_parallel_group converts it into a "terminated" result.
class RoundLimitReached : public std::runtime_error {
 public:
  RoundLimitReached() : std::runtime_error("round limit reached") {}
};

// Thrown from QueryLedger::submit_batch after the owning group requested
// cancellation (timeout path).
class FiberCancelled : public std::runtime_error {
 public:
  FiberCancelled() : std::runtime_error("fiber cancelled") {}
};

#define MATINT_CHECK(cond, msg)                                             \
  do {                                                                      \
    if (!(cond)) {                                                          \
      throw ::matint::InternalError(std::string("check failed: ") + #cond + \
                                    " (" + (msg) + ")");                    \
    }                                                                       \
  } while (false)

}  // namespace matint

#endif  // MATINT_ERRORS_HPP_
