// Copyright 2026 The cefix Authors.
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

#ifndef CEFIX_TOOLS_CLI_HPP_
#define CEFIX_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace cefix::cli {

/// Stable exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitUndecided = 2,
  kExitRefuted = 3,
};

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cefix::cli

#endif  // CEFIX_TOOLS_CLI_HPP_
