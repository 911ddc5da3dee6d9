// Copyright 2026 The MASS Authors
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

#ifndef MASS_CLI_CLI_H_
#define MASS_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace mass::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitIo = 2,
};

// Runs one invocation. `args` excludes the program name. Store location is
// $MASS_DATA_DIR/mass.db (current directory when unset).
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Makes a running `serve` return. Async-signal-safe.
void RequestStop();

}  // namespace mass::cli

#endif  // MASS_CLI_CLI_H_
