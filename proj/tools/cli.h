// Copyright 2026 The ipfpp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end. `dispatch` holds everything but the process
// entry point so tests can drive it in-process.
//
// Exit status: 0 success, 2 usage error, 3 runtime error, 4 a hard
// implication failed (a trial dump is written next to the outputs).

#ifndef IPFPP_TOOLS_CLI_H_
#define IPFPP_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace ipfpp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;
inline constexpr int kExitInvariant = 4;

// Default directory for files written by `experiment` and `couple`.
inline constexpr const char* kOutputDirEnv = "IPFPP_OUTPUT_DIR";

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ipfpp::cli

#endif  // IPFPP_TOOLS_CLI_H_
