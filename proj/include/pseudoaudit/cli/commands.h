// Copyright 2026 The Pseudoaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSEUDOAUDIT_CLI_COMMANDS_H_
#define PSEUDOAUDIT_CLI_COMMANDS_H_

#include <ostream>

namespace pseudoaudit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

// The pseudoaudit command line. Returns the process exit code: 0 on success,
// 1 for usage or config validation errors, 2 when a stage fails at run time.
int RunTool(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_CLI_COMMANDS_H_
