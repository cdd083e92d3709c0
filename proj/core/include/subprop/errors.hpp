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

#ifndef SUBPROP_ERRORS_HPP_
#define SUBPROP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace subprop {

// Classifies failures caused by inputs (files, flags, parameters). Violated
// preconditions inside the library throw std::logic_error instead.
enum class ErrorKind {
  kUsage,       // bad flag or parameter value
  kIo,          // file missing or unwritable
  kParse,       // malformed JSON or wrong field types
  kValidation,  // well-formed input violating a data invariant
  kLimit,       // instance exceeds a size guard
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace subprop

#endif  // SUBPROP_ERRORS_HPP_
