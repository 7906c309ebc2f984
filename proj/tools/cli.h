// Copyright 2026 The qsms Authors
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

#ifndef QSMS_TOOLS_CLI_H_
#define QSMS_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace qsms::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitGuard = 3;
inline constexpr int kExitFailed = 4;

/// Entry point behind the qsms binary. `args` excludes the program name.
/// Default output files go to $QSMS_OUTPUT_DIR, or the working directory.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qsms::cli

#endif  // QSMS_TOOLS_CLI_H_
