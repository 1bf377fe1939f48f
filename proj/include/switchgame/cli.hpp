// Copyright 2026 The switchgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SWITCHGAME_CLI_HPP_
#define SWITCHGAME_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace switchgame::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kValidationError = 2,
  kNumericalError = 3,
};

struct RunConfig {
  std::string command;  // riccati, values, schedule, simulate, compare, poa
  std::string config_path;
  std::uint64_t seed = 0;
  int runs = 10000;
  std::string output_dir = ".";
  int threads = 0;
};

// Runs one pipeline command. `args` excludes the program name. Diagnostics
// go to `err`, progress lines to `out`.
int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace switchgame::cli

#endif  // SWITCHGAME_CLI_HPP_
