// Copyright 2026 The xrayaug Authors. All Rights Reserved.
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

#ifndef XRAYAUG_CLI_H_
#define XRAYAUG_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace xrayaug::cli {

// Process exit codes. Stable across releases.
enum ExitStatus : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kUsageError = 2,
  kIoError = 3,
};

// Runs one command line (without the program name). Reports go to `out`,
// help text and errors to `err`, logs to standard error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xrayaug::cli

#endif  // XRAYAUG_CLI_H_
