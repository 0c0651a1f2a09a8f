// Copyright 2026 The MaskForge Authors
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

#ifndef MASKFORGE_TOOLS_CLI_H_
#define MASKFORGE_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace maskforge::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kRuntime = 2 };

// argv[0] is the program name. Normal output goes to `out`, diagnostics to
// `err`.
int dispatch(const std::vector<std::string>& argv, std::ostream& out,
             std::ostream& err);

}  // namespace maskforge::cli

#endif  // MASKFORGE_TOOLS_CLI_H_
