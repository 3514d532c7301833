// Copyright 2026 The Pragsynth Authors
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


#ifndef PRAGSYNTH_TOOLS_CLI_H_
#define PRAGSYNTH_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace pragsynth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInconsistent = 3;
inline constexpr int kExitIo = 4;

// Runs `pragsynth <args...>` (args excludes the program name). Human output
// goes to `out`, diagnostics to `err`. Returns the process exit code.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pragsynth::cli

#endif  // PRAGSYNTH_TOOLS_CLI_H_
