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

#ifndef SUBPROP_TOOLS_CLI_HPP_
#define SUBPROP_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace subprop::cli {

// Process exit codes, also listed in --help.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kIo = 3,
  kParse = 4,
  kValidation = 5,
  kLimit = 6,
};

// Runs one command. `args` includes the program name. Diagnostics are a
// single line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subprop::cli

#endif  // SUBPROP_TOOLS_CLI_HPP_
