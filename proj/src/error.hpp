// Copyright 2026 The aaeal Authors
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

#ifndef AAEAL_ERROR_HPP_
#define AAEAL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace aaeal {

enum class ErrorKind {
  kShape,       // tensor dimensions disagree
  kState,       // operation invalid in the current object state
  kInput,       // bad argument value
  kFormat,      // malformed file or document
  kConfig,      // inconsistent configuration
  kIo,          // filesystem failure
  kConflict,    // request collides with service state
  kValidation,  // request payload invalid
  kNumeric,     // non-finite value produced
};

const char* to_string(ErrorKind kind);

// All library failures are reported as Error; the kind maps onto C API status
// codes and HTTP status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace aaeal

#endif  // AAEAL_ERROR_HPP_
